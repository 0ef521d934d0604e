"""Computable quantities of the increasing-stability estimate.

All generic constants are set to 1.  Ratios of the form
``quantity / (right-hand side with C = 1)`` are reported so the constant an
inequality needs can be read off empirically.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .forward import (
    BoundaryDataset,
    ComplexFrequency,
    as_frequency,
    boundary_data_complex,
    forward_solve,
    split_source,
)
from .grid import SourceFunction, h1_norm_sq, integrate, l2_norm_sq, m_constant
from .spectral import TailProfile

log = logging.getLogger(__name__)

EPS_FLOOR = 1e-300
_SPLIT_FACTOR = 2.0**0.25


@dataclass(frozen=True)
class StabilityReport:
    epsilon_sq: float
    E: float
    M: float
    K: float
    k_star: float
    bound_rhs_unit_c: float
    tail_at_kstar: float
    i_at_kstar: float
    recon_error_sq: Optional[float] = None


@dataclass(frozen=True)
class SectorSample:
    k: ComplexFrequency
    i1: float
    i2: float
    lemma21_ratio_1: float
    lemma21_ratio_2: float


def _data_energy(data: BoundaryDataset):
    left = np.abs(data.alpha_u_left) ** 2
    right = np.abs(data.alpha_u_right) ** 2
    return left, right


def _integrate_from_zero(alphas: np.ndarray, values: np.ndarray, k: float) -> float:
    """Trapezoid integral over [0, k]; the integrand is held constant on [0, alphas[0]]."""
    x = np.concatenate(([0.0], alphas))
    v = np.concatenate(([values[0]], values))
    i = int(np.searchsorted(x, k, side="right")) - 1
    full = float(np.sum(0.5 * (v[1:i + 1] + v[:i]) * np.diff(x[: i + 1])))
    if i < x.size - 1 and k > x[i]:
        t = (k - x[i]) / (x[i + 1] - x[i])
        v_k = (1 - t) * v[i] + t * v[i + 1]
        full += 0.5 * (v[i] + v_k) * (k - x[i])
    return full


def epsilon_sq(data: BoundaryDataset) -> float:
    """int_0^K alpha^2 (|u(1, alpha)|^2 + |u(-1, alpha)|^2) d alpha.

    The integrand |alpha u|^2 stays finite as alpha -> 0; below the first
    measured frequency it is taken equal to its value there.
    """
    left, right = _data_energy(data)
    return _integrate_from_zero(data.alphas, left + right, data.K)


def i1_i2(data: BoundaryDataset, k: float) -> tuple[float, float]:
    """(I1(k), I2(k)): the energy of u(-1, .) and u(1, .) over (0, k]."""
    if not 0 < k <= data.K:
        raise ValueError(f"k = {k} outside (0, {data.K}]")
    left, right = _data_energy(data)
    return (
        _integrate_from_zero(data.alphas, left, k),
        _integrate_from_zero(data.alphas, right, k),
    )


def i_complex(f: SourceFunction, k, n_s: int = 65) -> tuple[complex, complex]:
    """I1, I2 continued to complex k by the substitution alpha = k s.

    I_j(k) = int_0^1 k |inner_j(s)|^2 ds with the half-source inner
    integrals of :func:`boundary_data_complex`; trapezoid in s.  For real k
    this equals the energy of the corresponding boundary trace on (0, k].
    """
    if n_s < 33:
        raise ValueError("n_s must be at least 33")
    kv = as_frequency(k).value
    s = np.linspace(0.0, 1.0, n_s)
    inner1, inner2 = boundary_data_complex(f, k, s)
    i1 = kv * np.trapezoid(np.abs(inner1) ** 2, s)
    i2 = kv * np.trapezoid(np.abs(inner2) ** 2, s)
    return complex(i1), complex(i2)


def lemma21_ratios(f: SourceFunction, k, n_s: int = 65) -> SectorSample:
    """|I_j(k)| / (|k| ||f||^2 exp(2|Im k|)) for j = 1, 2."""
    k = as_frequency(k)
    norm_sq = l2_norm_sq(f)
    if norm_sq == 0:
        raise ValueError("ratio undefined for a zero source")
    i1, i2 = i_complex(f, k, n_s)
    scale = abs(k.value) * norm_sq * math.exp(2 * abs(k.im))
    return SectorSample(k, abs(i1), abs(i2), abs(i1) / scale, abs(i2) / scale)


def weighted_i_ratio(f: SourceFunction, k, n_s: int = 65) -> float:
    """max_j |I_j(k) exp(-2k)| / M^2."""
    if l2_norm_sq(f) == 0:
        raise ValueError("ratio undefined for a zero source")
    kv = as_frequency(k).value
    damping = abs(np.exp(-2 * kv))
    i1, i2 = i_complex(f, k, n_s)
    return max(abs(i1), abs(i2)) * damping / m_constant(f) ** 2


def mu_lower(k: float, K: float) -> float:
    """Closed-form lower bound for the harmonic measure of [0, K] in the sector."""
    if k <= 0 or K <= 0:
        raise ValueError("k and K must be positive")
    if k <= _SPLIT_FACTOR * K:
        return 0.5
    return 1.0 / (math.pi * math.sqrt((k / K) ** 4 - 1.0))


def split_frequency(K: float, E: float) -> float:
    """K^(2/3) E^(1/4) when 2^(1/4) K^(1/3) < E^(1/4), otherwise K (ties go to K)."""
    if K <= 1:
        raise ValueError(f"K must exceed 1, got {K}")
    if E < 0:
        raise ValueError(f"E must be nonnegative, got {E}")
    if _SPLIT_FACTOR * K ** (1 / 3) < E**0.25:
        return K ** (2 / 3) * E**0.25
    return float(K)


def log_inverse(epsilon_sq: float, eps_floor: float = EPS_FLOOR) -> float:
    """E = -ln(eps) with eps clamped below at ``eps_floor``."""
    return -math.log(max(math.sqrt(epsilon_sq), eps_floor))


def bound_rhs(epsilon_sq: float, K: float, M: float, eps_floor: float = EPS_FLOOR) -> float:
    """eps^2 + M^2 / (1 + K^(2/3) E^(1/4)); E is clamped to [0, -ln eps_floor].

    Zero data leaves E undefined; the degenerate value 0 is returned and a
    warning logged.
    """
    if K <= 1:
        raise ValueError(f"K must exceed 1, got {K}")
    if M < 1:
        raise ValueError(f"M must be at least 1, got {M}")
    if epsilon_sq < 0:
        raise ValueError("epsilon_sq must be nonnegative")
    if epsilon_sq == 0:
        log.warning("bound_rhs: zero data, E undefined; returning 0")
        return 0.0
    E = max(log_inverse(epsilon_sq, eps_floor), 0.0)
    return epsilon_sq + M**2 / (1.0 + K ** (2 / 3) * E**0.25)


def high_freq_step_bound(K: float, E: float, M: float) -> float:
    """M^2 / (K^2 E^(3/2) (1 - (5 pi / 2) E^(-1/4))^3).

    Only defined on the large-E branch, 2^(1/4) K^(1/3) < E^(1/4) and
    E^(-1/4) < 1/(4 pi).
    """
    if E <= 0 or not _SPLIT_FACTOR * K ** (1 / 3) < E**0.25:
        raise ValueError("outside the branch 2^(1/4) K^(1/3) < E^(1/4)")
    if not E**-0.25 < 1 / (4 * math.pi):
        raise ValueError("requires E^(-1/4) < 1/(4 pi)")
    factor = 1.0 - 2.5 * math.pi * E**-0.25
    return M**2 / (K**2 * E**1.5 * factor**3)


def tail_ratio(f: SourceFunction, k: float, profile: Optional[TailProfile] = None) -> float:
    """Tail energy above k divided by ||f||_1^2 / k."""
    if k <= 0:
        raise ValueError("k must be positive")
    h1 = h1_norm_sq(f)
    if h1 == 0:
        raise ValueError("ratio undefined for a zero source")
    profile = profile or TailProfile(f)
    return profile.tail(k) * k / h1


def lemma24_diagnostic(f: SourceFunction, alpha: float) -> tuple[float, float, float, float]:
    """Boundary energies at k = (1 + i) alpha against real-exponential moments.

    Returns (lhs_left, lhs_right, rhs_left, rhs_right) with
    lhs = alpha^2 |u(-+1, (1+i) alpha)|^2 and
    rhs_left = |int exp(2 alpha y) f2|^2, rhs_right = |int exp(2 alpha y) f1|^2.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    u_left, u_right = forward_solve(f, ComplexFrequency.diagonal(alpha), [-1.0, 1.0])
    halves = split_source(f)
    weight = np.exp(2 * alpha * f.grid.nodes)
    rhs_left = abs(integrate(weight * halves.f2.values, f.grid)) ** 2
    rhs_right = abs(integrate(weight * halves.f1.values, f.grid)) ** 2
    return (
        alpha**2 * abs(u_left) ** 2,
        alpha**2 * abs(u_right) ** 2,
        float(rhs_left),
        float(rhs_right),
    )


def stability_report(
    f: SourceFunction,
    data: BoundaryDataset,
    recon_error_sq: Optional[float] = None,
    profile: Optional[TailProfile] = None,
) -> StabilityReport:
    """Assemble every scalar of the estimate for data measured from f.

    ``tail_at_kstar`` and ``i_at_kstar`` need the spectrum above K and are
    taken from the true source.
    """
    eps_sq = epsilon_sq(data)
    E = log_inverse(eps_sq)
    M = m_constant(f)
    K = data.K
    k_star = split_frequency(K, max(E, 0.0))
    profile = profile or TailProfile(f)
    tail_k = profile.tail(K)
    tail_star = profile.tail(k_star)
    return StabilityReport(
        epsilon_sq=eps_sq,
        E=E,
        M=M,
        K=K,
        k_star=k_star,
        bound_rhs_unit_c=bound_rhs(eps_sq, K, M),
        tail_at_kstar=tail_star,
        i_at_kstar=eps_sq + tail_k - tail_star,
        recon_error_sq=recon_error_sq,
    )
