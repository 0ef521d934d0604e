"""Band-limited source reconstruction and the high-frequency tail.

With fhat(xi) = int exp(-i xi y) f(y) dy the boundary products are

    alpha*u(-1, alpha) = (i/2) exp(-i alpha) fhat(alpha)
    alpha*u(+1, alpha) = (i/2) exp(-i alpha) fhat(-alpha)

so data on (0, K] is the Fourier transform of f on [-K, K].  Everything
above K is lost; its energy is the tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .forward import BoundaryDataset, boundary_data, make_frequency_grid
from .grid import Grid, SourceFunction, derivative, integrate, l2_norm_sq

_CHUNK = 256
# the spectrum of a sampled source is trusted up to this fraction of pi/h
_RESOLVED_FRACTION = 0.25
_PEAK_RATIO = 1e-16


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Samples of fhat on a grid symmetric about zero."""

    xi: np.ndarray
    fhat: np.ndarray

    def __post_init__(self):
        xi = np.array(self.xi, dtype=float)
        fhat = np.array(self.fhat, dtype=complex)
        if xi.shape != fhat.shape or xi.ndim != 1:
            raise ValueError("xi and fhat must be 1-d arrays of equal length")
        if np.any(np.diff(xi) <= 0):
            raise ValueError("xi must be strictly increasing")
        if not np.allclose(xi, -xi[::-1], rtol=0, atol=1e-12 * max(1.0, np.abs(xi).max(initial=0))):
            raise ValueError("xi must be symmetric about zero")
        xi.flags.writeable = fhat.flags.writeable = False
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "fhat", fhat)

    @property
    def K(self) -> float:
        return float(self.xi[-1]) if self.xi.size else 0.0


@dataclass(frozen=True)
class Reconstruction:
    f_rec: SourceFunction
    K: float
    l2_error_vs_truth: Optional[float] = None


def fourier_transform(f: SourceFunction, xi) -> np.ndarray:
    """Simpson quadrature of int exp(-i xi y) f(y) dy at each xi."""
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    w = f.grid.simpson_weights * f.values
    out = np.empty(xi.size, dtype=complex)
    for start in range(0, xi.size, _CHUNK):
        block = xi[start:start + _CHUNK, None]
        out[start:start + _CHUNK] = np.exp(-1j * block * f.grid.nodes) @ w
    return out


def fourier_from_boundary(data: BoundaryDataset) -> SpectralData:
    alphas = data.alphas
    phase = -2j * np.exp(1j * alphas)
    positive = phase * data.alpha_u_left
    negative = phase * data.alpha_u_right
    xi = np.concatenate((-alphas[::-1], alphas))
    fhat = np.concatenate((negative[::-1], positive))
    return SpectralData(xi, fhat)


def trapezoid_weights(x: np.ndarray) -> np.ndarray:
    w = np.zeros_like(x, dtype=float)
    dx = np.diff(x)
    w[:-1] += dx / 2
    w[1:] += dx / 2
    return w


def reconstruct_bandlimited(
    spec: SpectralData,
    grid: Grid,
    truth: Optional[SourceFunction] = None,
    real_part: bool = False,
) -> Reconstruction:
    """f_rec(x) = (1/2pi) int_{-K}^{K} fhat(xi) exp(i xi x) dxi by trapezoid.

    ``real_part=True`` drops the imaginary part of the result, which is only
    appropriate when the true source is known to be real.
    """
    if spec.xi.size == 0:
        raise ValueError("empty spectrum")
    w = trapezoid_weights(spec.xi) * spec.fhat / (2 * np.pi)
    x = grid.nodes
    values = np.empty(x.size, dtype=complex)
    for start in range(0, x.size, _CHUNK):
        values[start:start + _CHUNK] = np.exp(1j * x[start:start + _CHUNK, None] * spec.xi) @ w
    if real_part:
        values = values.real
    f_rec = SourceFunction(grid, values, (-1.0, 1.0))
    error = None
    if truth is not None:
        if truth.grid != grid:
            raise ValueError("truth lives on a different grid")
        error = math.sqrt(l2_norm_sq(truth - f_rec))
    return Reconstruction(f_rec, spec.K, error)


class TailProfile:
    """|fhat(xi)|^2 + |fhat(-xi)|^2 on a uniform grid in [0, cutoff].

    The spectrum comes from a zero-padded FFT of the Simpson-weighted
    samples, which equals the direct Simpson transform at xi = m*dxi.  The
    cutoff is where |fhat|^2 drops below 1e-16 of its peak, capped at the
    highest frequency the grid resolves; beyond it the tail is bounded by
    integration by parts.
    """

    def __init__(self, f: SourceFunction, dxi: float = 0.05):
        h = f.grid.spacing
        n_fft = 1 << math.ceil(math.log2(2 * np.pi / (h * dxi)))
        self.dxi = 2 * np.pi / (n_fft * h)
        m_max = int(_RESOLVED_FRACTION * np.pi / h / self.dxi)
        c = f.grid.simpson_weights * f.values
        spectrum = np.fft.fft(c, n_fft)
        m = np.arange(m_max + 1)
        xi = m * self.dxi
        # sum_j c_j exp(-i xi y_j) with y_j = -1 + j h
        pos = np.exp(1j * xi) * spectrum[m]
        neg = np.exp(-1j * xi) * spectrum[(-m) % n_fft]
        energy = np.maximum(np.abs(pos) ** 2, np.abs(neg) ** 2)
        peak = energy.max()
        if peak > 0:
            above = np.nonzero(energy >= _PEAK_RATIO * peak)[0]
            last = min(above[-1] + 1, m_max)
        else:
            last = 1
        self.xi = xi[: last + 1]
        self.density = np.abs(pos[: last + 1]) ** 2 + np.abs(neg[: last + 1]) ** 2
        self.cutoff = float(self.xi[-1])
        # cumulative trapezoid from the cutoff down to each grid point
        seg = 0.5 * (self.density[1:] + self.density[:-1]) * self.dxi
        self._from_right = np.concatenate((np.cumsum(seg[::-1])[::-1], [0.0]))

        df = derivative(f)
        self.deriv_l2_sq = float(integrate(np.abs(df) ** 2, f.grid))
        self.deriv_variation = float(np.sum(np.abs(np.diff(df))))

    @property
    def remainder_bound(self) -> float:
        """Bound on (1/4) int_{|xi| > cutoff} |fhat|^2.

        Uses |fhat| <= sqrt(2)||f'|| / |xi| and, when f' has bounded
        variation, |fhat| <= TV(f') / xi^2; the smaller bound wins.
        """
        x = self.cutoff
        return min(self.deriv_l2_sq / x, self.deriv_variation**2 / (6 * x**3))

    def tail(self, K: float) -> float:
        """(1/4) int_{K < |xi| < cutoff} |fhat|^2, i.e. int_K alpha^2 (|u(-1)|^2 + |u(1)|^2)."""
        if K <= 0:
            raise ValueError("K must be positive")
        if K >= self.cutoff:
            return 0.0
        i = int(K // self.dxi)
        t = K / self.dxi - i
        d_k = (1 - t) * self.density[i] + t * self.density[i + 1]
        partial = 0.5 * (d_k + self.density[i + 1]) * (self.xi[i + 1] - K)
        return 0.25 * float(partial + self._from_right[i + 1])


def truncation_tail(f: SourceFunction, K: float) -> float:
    return TailProfile(f).tail(K)


def reconstruction_error_identity_check(
    f: SourceFunction, K: float, dalpha: float = 0.05
) -> tuple[float, float]:
    """(||f - f_rec||^2, (1/2pi) int_{|xi| > K} |fhat|^2) for band limit K."""
    data = boundary_data(f, make_frequency_grid(K, dalpha))
    rec = reconstruct_bandlimited(fourier_from_boundary(data), f.grid, truth=f)
    lhs = rec.l2_error_vs_truth**2
    rhs = 2.0 / np.pi * truncation_tail(f, K)
    return lhs, rhs
