"""Uniform grids on [-1, 1], composite Simpson quadrature and Sobolev norms."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

DEFAULT_N_NODES = 2049
# nodes within this distance of a support endpoint count as inside it
_SUPPORT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Grid:
    """Uniform grid of ``n_nodes`` points spanning exactly [-1, 1]."""

    n_nodes: int
    nodes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n = self.n_nodes
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
            raise TypeError(f"n_nodes must be an integer, got {n!r}")
        if n < 3 or n % 2 == 0:
            raise ValueError(f"n_nodes must be odd and >= 3, got {n}")
        nodes = np.linspace(-1.0, 1.0, int(n))
        nodes.flags.writeable = False
        object.__setattr__(self, "n_nodes", int(n))
        object.__setattr__(self, "nodes", nodes)

    @property
    def spacing(self) -> float:
        return 2.0 / (self.n_nodes - 1)

    @cached_property
    def simpson_weights(self) -> np.ndarray:
        w = np.full(self.n_nodes, 2.0)
        w[1::2] = 4.0
        w[0] = w[-1] = 1.0
        w *= self.spacing / 3.0
        w.flags.writeable = False
        return w

    def __eq__(self, other):
        return isinstance(other, Grid) and other.n_nodes == self.n_nodes

    def __hash__(self):
        return hash(("Grid", self.n_nodes))


def make_grid(n_nodes: int = DEFAULT_N_NODES) -> Grid:
    return Grid(n_nodes)


def integrate(values, grid: Grid):
    """Composite Simpson approximation of the integral over [-1, 1]."""
    values = np.asarray(values)
    if values.shape[-1] != grid.n_nodes:
        raise ValueError(
            f"expected {grid.n_nodes} samples, got {values.shape[-1]}"
        )
    return values @ grid.simpson_weights


@dataclass(frozen=True, eq=False)
class SourceFunction:
    """Complex samples of a source on a grid, zero outside ``support``.

    Values at nodes outside the closed interval ``support`` are set to zero
    on construction.
    """

    grid: Grid
    values: np.ndarray
    support: tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self):
        a, b = (float(s) for s in self.support)
        if not -1.0 <= a <= b <= 1.0:
            raise ValueError(f"support [{a}, {b}] is not a subinterval of [-1, 1]")
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.grid.n_nodes,):
            raise ValueError(
                f"values has shape {values.shape}, grid has {self.grid.n_nodes} nodes"
            )
        x = self.grid.nodes
        values[(x < a - _SUPPORT_TOL) | (x > b + _SUPPORT_TOL)] = 0.0
        values.flags.writeable = False
        object.__setattr__(self, "support", (a, b))
        object.__setattr__(self, "values", values)

    @classmethod
    def from_callable(
        cls,
        grid: Grid,
        func: Callable[[np.ndarray], np.ndarray],
        support: tuple[float, float],
    ) -> "SourceFunction":
        return cls(grid, func(grid.nodes), support)

    @property
    def is_compact(self) -> bool:
        """True when the support lies strictly inside (-1, 1)."""
        a, b = self.support
        return -1.0 < a and b < 1.0

    @property
    def is_real(self) -> bool:
        return not np.any(self.values.imag)

    def __add__(self, other: "SourceFunction") -> "SourceFunction":
        if other.grid != self.grid:
            raise ValueError("sources live on different grids")
        support = (
            min(self.support[0], other.support[0]),
            max(self.support[1], other.support[1]),
        )
        return SourceFunction(self.grid, self.values + other.values, support)

    def __sub__(self, other: "SourceFunction") -> "SourceFunction":
        return self + other.scaled(-1.0)

    def scaled(self, factor: complex) -> "SourceFunction":
        return SourceFunction(self.grid, factor * self.values, self.support)


def derivative(f: SourceFunction) -> np.ndarray:
    """Centered differences inside, second-order one-sided at the endpoints."""
    return np.gradient(f.values, f.grid.spacing, edge_order=2)


def l2_norm_sq(f: SourceFunction) -> float:
    return float(integrate(np.abs(f.values) ** 2, f.grid))


def h1_norm_sq(f: SourceFunction) -> float:
    return l2_norm_sq(f) + float(integrate(np.abs(derivative(f)) ** 2, f.grid))


def m_constant(f: SourceFunction) -> float:
    """A-priori bound ``max(||f||_1^2, 1)`` entering the stability estimate."""
    return max(h1_norm_sq(f), 1.0)


def sample(f: SourceFunction, points) -> np.ndarray:
    """Evaluate f between nodes by local cubic Lagrange interpolation."""
    points = np.asarray(points, dtype=float)
    grid = f.grid
    h = grid.spacing
    # stencil j-1..j+2 around the cell [x_j, x_{j+1}] containing each point
    j = np.floor((points + 1.0) / h).astype(int)
    start = np.clip(j - 1, 0, grid.n_nodes - 4)
    t = (points - grid.nodes[start]) / h
    v = [f.values[start + m] for m in range(4)]
    return (
        -v[0] * (t - 1) * (t - 2) * (t - 3) / 6
        + v[1] * t * (t - 2) * (t - 3) / 2
        - v[2] * t * (t - 1) * (t - 3) / 2
        + v[3] * t * (t - 1) * (t - 2) / 6
    )
