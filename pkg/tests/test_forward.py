import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from inverse_source.fixtures import FIXTURES, make_fixture
from inverse_source.forward import (
    ComplexFrequency,
    FrequencyGrid,
    boundary_data,
    boundary_data_complex,
    forward_solve,
    green,
    make_frequency_grid,
    ode_residual,
    split_source,
)
from inverse_source.grid import SourceFunction, l2_norm_sq, make_grid


def test_green_values():
    assert green(1.0, 0.3, 0.3) == pytest.approx(0.5j)
    assert green(2.0, 0.0, 0.0) == pytest.approx(0.25j)
    assert green(1.0, math.pi / 2, -math.pi / 2) == pytest.approx(-0.5j, abs=1e-15)


@pytest.mark.parametrize("k", [3.0, 2 + 1j, 5 - 3j])
def test_green_modulus(k):
    x, y = 0.7, -0.4
    assert abs(green(k, x, y)) == pytest.approx(
        math.exp(k.imag * abs(x - y) if isinstance(k, complex) else 0.0) / (2 * abs(k))
    )


def test_sector_validation():
    ComplexFrequency(1.0, 0.99)
    with pytest.raises(ValueError):
        ComplexFrequency(1.0, 1.0)
    with pytest.raises(ValueError):
        ComplexFrequency(0.0)
    with pytest.raises(ValueError):
        ComplexFrequency(-1.0)
    d = ComplexFrequency.diagonal(2.0, sign=-1)
    assert d.value == 2 - 2j


def test_frequency_grid_validation():
    fg = make_frequency_grid(20.0, 0.05)
    assert fg.alphas[-1] == 20.0 and fg.alphas[0] > 0
    with pytest.raises(ValueError):
        FrequencyGrid(np.array([0.0, 1.0]), 1.0)
    with pytest.raises(ValueError):
        FrequencyGrid(np.array([1.0, 3.0]), 3.0)  # spacing above pi/8


def test_zero_source_gives_zero_everywhere(grid):
    f = make_fixture("zero", grid)
    assert np.all(forward_solve(f, 3.0, np.linspace(-1, 1, 11)) == 0)
    data = boundary_data(f, make_frequency_grid(5.0))
    assert np.all(data.u_left == 0) and np.all(data.u_right == 0)
    assert ode_residual(f, 5.0, 257) == (0.0, 0.0)


def _narrow_bump(grid, width):
    f = SourceFunction.from_callable(
        grid, lambda x: np.exp(-1 / np.clip(1 - (x / width) ** 2, 1e-300, None)) * (np.abs(x) < width),
        (-width, width),
    )
    return f.scaled(1 / (f.values.real @ grid.simpson_weights))


def test_narrow_source_approaches_green():
    grid = make_grid(8193)
    x = np.array([-0.9, -0.5, -0.2, 0.3, 0.8])
    errors = []
    for width in (0.08, 0.04, 0.02):
        u = forward_solve(_narrow_bump(grid, width), 1.0, x)
        errors.append(np.max(np.abs(u - green(1.0, x, 0.0))))
    assert errors[-1] <= 1e-3
    assert errors[0] > errors[1] > errors[2]


def test_forward_solve_agrees_with_boundary_data(grid):
    f = make_fixture("smooth_bump", grid)
    data = boundary_data(f, make_frequency_grid(5.0))
    u = forward_solve(f, 5.0, [-1.0, 1.0])
    assert abs(u[0] - data.u_left[-1]) <= 1e-10
    assert abs(u[1] - data.u_right[-1]) <= 1e-10


@pytest.mark.parametrize("name", ["smooth_bump", "two_bumps", "odd_bump"])
def test_boundary_data_against_adaptive_quadrature(grid, name):
    alpha = 3.0
    g, (a, b) = oracles.closed_form(name)
    right = oracles.cquad(lambda y: 0.5j * cmath.exp(-1j * alpha * (1 - y)) * g(y), a, b)
    left = oracles.cquad(lambda y: 0.5j * cmath.exp(-1j * alpha * (1 + y)) * g(y), a, b)
    data = boundary_data(make_fixture(name, grid), make_frequency_grid(alpha, 0.05))
    assert abs(data.alpha_u_right[-1] - right) <= 1e-9
    assert abs(data.alpha_u_left[-1] - left) <= 1e-9


def test_even_source_has_symmetric_traces(grid):
    data = boundary_data(make_fixture("smooth_bump", grid), make_frequency_grid(10.0))
    assert np.allclose(np.abs(data.u_left), np.abs(data.u_right), rtol=1e-12, atol=1e-15)


@settings(max_examples=15, deadline=None)
@given(
    st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
    st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
)
def test_boundary_data_is_linear(a, b):
    grid = make_grid(257)
    f, g = make_fixture("smooth_bump", grid), make_fixture("triangle_hat", grid)
    fg = make_frequency_grid(4.0, 0.1)
    combo = boundary_data(f.scaled(a) + g.scaled(b), fg)
    df, dg = boundary_data(f, fg), boundary_data(g, fg)
    expected = a * df.alpha_u_right + b * dg.alpha_u_right
    scale = 1 + abs(a) + abs(b)
    assert np.max(np.abs(combo.alpha_u_right - expected)) <= 1e-12 * scale


def test_split_source_partitions(grid):
    one = SourceFunction(grid, np.ones(grid.n_nodes))
    halves = split_source(one)
    assert np.array_equal(halves.f1.values.real, (grid.nodes > 0).astype(float))
    assert np.array_equal(halves.f2.values.real, (grid.nodes <= 0).astype(float))
    odd = split_source(make_fixture("odd_bump", grid))
    assert l2_norm_sq(odd.f1) == pytest.approx(l2_norm_sq(odd.f2), rel=1e-12)
    zero = split_source(make_fixture("zero", grid))
    assert l2_norm_sq(zero.f1) == l2_norm_sq(zero.f2) == 0


@pytest.mark.parametrize("k", [5.0, ComplexFrequency(5.0, 1.0)])
def test_ode_residual_small_and_second_order(grid, k):
    f = make_fixture("smooth_bump", grid)
    coarse, fine = ode_residual(f, k, 2049), ode_residual(f, k, 4097)
    assert coarse[0] <= 1e-5 and coarse[1] <= 1e-9
    assert math.log2(coarse[0] / fine[0]) >= 1.9


def test_half_source_inner_integrals_against_closed_form():
    # f = 1 on [0, 1/2]; the jump at y = 0 makes nodal quadrature first order
    k = ComplexFrequency.diagonal(1.0)
    kv = k.value
    exact = 0.5 * (cmath.exp(1j * kv) - cmath.exp(0.5j * kv)) / (1j * kv)
    errors = []
    for n in (2049, 4097):
        grid = make_grid(n)
        f = SourceFunction(grid, np.ones(n), (0.0, 0.5))
        inner1, inner2 = boundary_data_complex(f, k, [1.0])
        # the node y = 0 belongs to f2
        assert abs(inner2[0]) <= grid.spacing
        errors.append(abs(inner1[0] - exact))
    assert errors[0] <= 1e-3 * abs(exact)
    assert errors[0] / errors[1] >= 1.8


def test_half_source_inner_matches_boundary_data_for_real_k(grid):
    # supported in (0, 1) only: inner1(s) is the right trace at alpha = k s
    from inverse_source.fixtures import bump

    f = SourceFunction.from_callable(grid, lambda x: bump(x, 0.5, 0.3), (0.2, 0.8))
    s = np.array([0.25, 0.5, 1.0])
    inner1, _ = boundary_data_complex(f, 8.0, s)
    data = boundary_data(f, FrequencyGrid(np.arange(1, 81) * 0.1, 8.0))
    idx = [19, 39, 79]
    assert np.allclose(np.abs(inner1), np.abs(data.alpha_u_right[idx]), rtol=1e-12)
