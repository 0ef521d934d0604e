"""Reproducible Gaussian measurement noise.

The stream is fully specified so other implementations can reproduce it
bit for bit:

* SplitMix64: the i-th output (i = 1, 2, ...) is mix(seed + i * 0x9E3779B97F4A7C15)
  with mix(z) = z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
  z *= 0x94D049BB133111EB; z ^= z >> 31 (all mod 2^64).
* Uniforms: u = (x >> 11) * 2^-53 in [0, 1).
* Box-Muller on consecutive pairs (u1, u2):
  r = sqrt(-2 ln(1 - u1)), z0 = r cos(2 pi u2), z1 = r sin(2 pi u2).
"""

from __future__ import annotations

import numpy as np

from .forward import BoundaryDataset

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def splitmix64(seed: int, n: int) -> np.ndarray:
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    i = np.arange(1, n + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed) + i * _GAMMA
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def standard_normals(seed: int, n: int) -> np.ndarray:
    n_pairs = (n + 1) // 2
    u = (splitmix64(seed, 2 * n_pairs) >> np.uint64(11)).astype(float) * 2.0**-53
    r = np.sqrt(-2.0 * np.log(1.0 - u[0::2]))
    theta = 2.0 * np.pi * u[1::2]
    z = np.empty(2 * n_pairs)
    z[0::2] = r * np.cos(theta)
    z[1::2] = r * np.sin(theta)
    return z[:n]


def add_noise(data: BoundaryDataset, delta: float, seed: int) -> BoundaryDataset:
    """Perturb every alpha*u sample by complex Gaussian noise.

    Each real and imaginary part gets an independent N(0, sigma^2) draw with
    sigma = delta * max|alpha*u| over the dataset.  Per frequency the draws
    are consumed in the order left.re, left.im, right.re, right.im.
    """
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    left, right = data.alpha_u_left, data.alpha_u_right
    if delta == 0:
        return BoundaryDataset(data.freq_grid, left.copy(), right.copy())
    peak = max(np.abs(left).max(), np.abs(right).max())
    z = standard_normals(seed, 4 * left.size).reshape(-1, 4) * (delta * peak)
    return BoundaryDataset(
        data.freq_grid,
        left + (z[:, 0] + 1j * z[:, 1]),
        right + (z[:, 2] + 1j * z[:, 3]),
    )
