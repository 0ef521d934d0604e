"""Closed-form source fixtures used by scenarios, tests and the CLI.

    zero            f = 0
    constant_patch  f = 1 on [-1/4, 1/4]
    triangle_hat    f = max(0, 1 - 2|x|)                      on [-1/2, 1/2]
    smooth_bump     f = exp(-1 / (1 - (2x)^2))                on |x| < 1/2
    two_bumps       f = b(x + 1/2) + b(x - 2/5) / 2,          b(t) = exp(-1/(1 - (4t)^2)) on |t| < 1/4
    odd_bump        f = c(x - 2/5) - c(x + 2/5),              c(t) = exp(-1/(1 - (t/0.3)^2)) on |t| < 0.3
"""

from __future__ import annotations

import numpy as np

from .grid import Grid, SourceFunction


def bump(x, center: float = 0.0, halfwidth: float = 0.5):
    """exp(-1/(1 - t^2)) with t = (x - center)/halfwidth, zero for |t| >= 1."""
    t = (np.asarray(x, dtype=float) - center) / halfwidth
    out = np.zeros_like(t)
    inside = np.abs(t) < 1
    out[inside] = np.exp(-1.0 / (1.0 - t[inside] ** 2))
    return out


def _zero(x):
    return np.zeros_like(x)


def _constant_patch(x):
    return np.where(np.abs(x) <= 0.25, 1.0, 0.0)


def _triangle_hat(x):
    return np.maximum(0.0, 1.0 - 2.0 * np.abs(x))


def _smooth_bump(x):
    return bump(x)


def _two_bumps(x):
    return bump(x, -0.5, 0.25) + 0.5 * bump(x, 0.4, 0.25)


def _odd_bump(x):
    return bump(x, 0.4, 0.3) - bump(x, -0.4, 0.3)


# name -> (closed form, support)
FIXTURES = {
    "zero": (_zero, (0.0, 0.0)),
    "constant_patch": (_constant_patch, (-0.25, 0.25)),
    "triangle_hat": (_triangle_hat, (-0.5, 0.5)),
    "smooth_bump": (_smooth_bump, (-0.5, 0.5)),
    "two_bumps": (_two_bumps, (-0.75, 0.65)),
    "odd_bump": (_odd_bump, (-0.7, 0.7)),
}


def fixture_function(name: str):
    try:
        return FIXTURES[name][0]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None


def make_fixture(name: str, grid: Grid) -> SourceFunction:
    func = fixture_function(name)
    return SourceFunction.from_callable(grid, func, FIXTURES[name][1])
