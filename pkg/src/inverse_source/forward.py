"""Direct problem for u'' + k^2 u = f on (-1, 1) with outgoing conditions.

The solution is the convolution of f with the Green's function
G(x - y) = (i/2) exp(-ik|x - y|) / k, which satisfies G'' + k^2 G = delta
together with u'(1) + iku(1) = 0 and u'(-1) - iku(-1) = 0.  Boundary values
over a band of real frequencies are the measurements of the inverse problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grid import SourceFunction, sample

# frequency rows per block when forming exp(i alpha y) matrices
_CHUNK = 256
_GAUSS_X, _GAUSS_W = np.polynomial.legendre.leggauss(6)


@dataclass(frozen=True)
class ComplexFrequency:
    """Wave number k = re + i*im in the open sector |arg k| < pi/4.

    The boundary rays |im| = re are only admitted through :meth:`diagonal`.
    """

    re: float
    im: float = 0.0
    on_diagonal: bool = field(default=False, repr=False)

    def __post_init__(self):
        if not self.re > 0:
            raise ValueError(f"k.re must be positive, got {self.re}")
        if self.on_diagonal:
            if not math.isclose(abs(self.im), self.re, rel_tol=1e-14):
                raise ValueError("diagonal frequency needs |im| == re")
        elif not abs(self.im) < self.re:
            raise ValueError(f"k = {self.re}{self.im:+}i lies outside the sector")

    @classmethod
    def diagonal(cls, alpha: float, sign: int = 1) -> "ComplexFrequency":
        """k = alpha * (1 + i) (or alpha * (1 - i) for ``sign=-1``)."""
        return cls(float(alpha), math.copysign(float(alpha), sign), on_diagonal=True)

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    def __complex__(self):
        return self.value


def as_frequency(k) -> ComplexFrequency:
    if isinstance(k, ComplexFrequency):
        return k
    k = complex(k)
    return ComplexFrequency(k.real, k.imag)


def green(k, x, y):
    """Outgoing Green's function (i/2) exp(-ik|x-y|)/k, broadcasting over x, y."""
    kv = as_frequency(k).value
    return 0.5j * np.exp(-1j * kv * np.abs(np.asarray(x) - np.asarray(y))) / kv


@dataclass(frozen=True, eq=False)
class FrequencyGrid:
    """Measurement frequencies in (0, K], ending exactly at K."""

    alphas: np.ndarray
    K: float

    def __post_init__(self):
        alphas = np.array(self.alphas, dtype=float)
        if alphas.ndim != 1 or alphas.size < 2:
            raise ValueError("need at least two frequencies")
        if alphas[0] <= 0 or np.any(np.diff(alphas) <= 0):
            raise ValueError("frequencies must be positive and strictly increasing")
        if alphas[-1] != self.K:
            raise ValueError("last frequency must equal K")
        if max(alphas[0], np.max(np.diff(alphas))) > np.pi / 8:
            raise ValueError("frequency spacing exceeds pi/8")
        alphas.flags.writeable = False
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "K", float(self.K))

    def __len__(self):
        return self.alphas.size


def make_frequency_grid(K: float, dalpha: float = 0.05) -> FrequencyGrid:
    """Uniform grid alpha_j = j*K/N, j = 1..N, with K/N <= dalpha."""
    if K <= 0 or dalpha <= 0:
        raise ValueError("K and dalpha must be positive")
    n = max(2, math.ceil(K / dalpha - 1e-9))
    alphas = K * np.arange(1, n + 1) / n
    alphas[-1] = K
    return FrequencyGrid(alphas, K)


@dataclass(frozen=True, eq=False)
class BoundaryDataset:
    """Products alpha*u(-1, alpha) and alpha*u(1, alpha) on a frequency grid.

    The products are the stored quantities; ``u_left``/``u_right`` divide by
    alpha on demand.
    """

    freq_grid: FrequencyGrid
    alpha_u_left: np.ndarray
    alpha_u_right: np.ndarray

    def __post_init__(self):
        n = len(self.freq_grid)
        for name in ("alpha_u_left", "alpha_u_right"):
            arr = np.array(getattr(self, name), dtype=complex)
            if arr.shape != (n,):
                raise ValueError(f"{name} has shape {arr.shape}, expected ({n},)")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def alphas(self) -> np.ndarray:
        return self.freq_grid.alphas

    @property
    def K(self) -> float:
        return self.freq_grid.K

    @property
    def u_left(self) -> np.ndarray:
        return self.alpha_u_left / self.alphas

    @property
    def u_right(self) -> np.ndarray:
        return self.alpha_u_right / self.alphas


@dataclass(frozen=True)
class SplitSource:
    """f1 carries the nodes x > 0, f2 the nodes x <= 0."""

    f1: SourceFunction
    f2: SourceFunction


def split_source(f: SourceFunction) -> SplitSource:
    x = f.grid.nodes
    a, b = f.support
    f1 = SourceFunction(f.grid, np.where(x > 0, f.values, 0), (max(a, 0.0), max(b, 0.0)))
    f2 = SourceFunction(f.grid, np.where(x <= 0, f.values, 0), (min(a, 0.0), min(b, 0.0)))
    return SplitSource(f1, f2)


def _cell_integrals(f: SourceFunction, kv: complex, sign: int, lo, hi):
    """Integral of exp(sign*i*k*y) P(y) over [lo, hi] inside single cells.

    P is the piecewise-cubic interpolant of f from :func:`sample`; each
    interval must not straddle a node.  6-point Gauss-Legendre.
    """
    half = 0.5 * (hi - lo)
    y = 0.5 * (hi + lo)[:, None] + half[:, None] * _GAUSS_X
    p = sample(f, y.ravel()).reshape(y.shape)
    return half * ((np.exp(sign * 1j * kv * y) * p) @ _GAUSS_W)


def forward_solve(f: SourceFunction, k, eval_points) -> np.ndarray:
    """u(x) = int G(x - y) f(y) dy at each evaluation point.

    The kernel has a kink at y = x, so the integral is split there:
    u(x) = (i/2k) [exp(-ikx) A(x) + exp(ikx) B(x)] with
    A(x) = int_{-1}^{x} exp(iky) f and B(x) = int_{x}^{1} exp(-iky) f.
    Both are exact cell-by-cell integrals of the piecewise-cubic interpolant
    of f, so u'' + k^2 u reproduces that interpolant at every x.
    """
    kv = as_frequency(k).value
    x = np.atleast_1d(np.asarray(eval_points, dtype=float))
    if np.any(x < -1.0) or np.any(x > 1.0):
        raise ValueError("evaluation points must lie in [-1, 1]")
    grid = f.grid
    y = grid.nodes
    n_cells = grid.n_nodes - 1

    left_cells = _cell_integrals(f, kv, 1, y[:-1], y[1:])
    right_cells = _cell_integrals(f, kv, -1, y[:-1], y[1:])
    left_cum = np.concatenate(([0.0], np.cumsum(left_cells)))
    # accumulated from the right end so large |Im k| causes no cancellation
    right_cum = np.concatenate((np.cumsum(right_cells[::-1])[::-1], [0.0]))

    j = np.clip(np.floor((x + 1.0) / grid.spacing).astype(int), 0, n_cells - 1)
    a_part = left_cum[j] + _cell_integrals(f, kv, 1, y[j], x)
    b_part = right_cum[j + 1] + _cell_integrals(f, kv, -1, x, y[j + 1])
    return 0.5j / kv * (np.exp(-1j * kv * x) * a_part + np.exp(1j * kv * x) * b_part)


def _alpha_u(f: SourceFunction, alphas: np.ndarray):
    y = f.grid.nodes
    w = f.grid.simpson_weights * f.values
    right = np.empty(alphas.size, dtype=complex)
    left = np.empty(alphas.size, dtype=complex)
    for start in range(0, alphas.size, _CHUNK):
        a = alphas[start:start + _CHUNK, None]
        right[start:start + _CHUNK] = np.exp(-1j * a * (1.0 - y)) @ w
        left[start:start + _CHUNK] = np.exp(-1j * a * (1.0 + y)) @ w
    return 0.5j * left, 0.5j * right


def boundary_data(f: SourceFunction, freq_grid: FrequencyGrid) -> BoundaryDataset:
    """alpha*u(+-1, alpha) = (i/2) int exp(-i alpha (1 -+ y)) f(y) dy over (-1, 1)."""
    left, right = _alpha_u(f, freq_grid.alphas)
    return BoundaryDataset(freq_grid, left, right)


def boundary_data_complex(f: SourceFunction, k, s_grid):
    """Inner integrals of the sector continuation at k*s for each s.

    Returns ``(inner1, inner2)`` with
    inner1(s) = int_0^1 (1/2) exp(iks(1 - y)) f1(y) dy and
    inner2(s) = int_{-1}^0 (1/2) exp(iks(-1 - y)) f2(y) dy,
    where (f1, f2) = split_source(f).
    """
    kv = as_frequency(k).value
    s = np.atleast_1d(np.asarray(s_grid, dtype=float))
    halves = split_source(f)
    y = f.grid.nodes
    w = f.grid.simpson_weights
    ks = kv * s[:, None]
    inner1 = 0.5 * np.exp(1j * ks * (1.0 - y)) @ (w * halves.f1.values)
    inner2 = 0.5 * np.exp(1j * ks * (-1.0 - y)) @ (w * halves.f2.values)
    return inner1, inner2


def ode_residual(f: SourceFunction, k, n_check: int) -> tuple[float, float]:
    """Discrete residuals of the ODE and of the outgoing conditions.

    u is evaluated on ``n_check`` uniform points via :func:`forward_solve`.
    The interior residual uses centered second differences, the boundary
    residual fourth-order one-sided first differences.
    """
    if n_check < 5:
        raise ValueError("n_check must be at least 5")
    kv = as_frequency(k).value
    x = np.linspace(-1.0, 1.0, n_check)
    h = 2.0 / (n_check - 1)
    u = forward_solve(f, k, x)

    d2u = (u[2:] - 2 * u[1:-1] + u[:-2]) / h**2
    interior = np.max(np.abs(d2u + kv**2 * u[1:-1] - sample(f, x[1:-1])))

    stencil = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / (12 * h)
    du_left = stencil @ u[:5]
    du_right = -(stencil @ u[::-1][:5])
    bc = max(abs(du_right + 1j * kv * u[-1]), abs(du_left - 1j * kv * u[0]))
    return float(interior), float(bc)
