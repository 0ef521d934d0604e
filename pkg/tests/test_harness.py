import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from inverse_source import cli
from inverse_source.fixtures import make_fixture
from inverse_source.forward import boundary_data, make_frequency_grid
from inverse_source.harness import (
    SCAN_HEADER,
    Scenario,
    ScanRow,
    default_scenarios,
    emit_csv,
    empirical_constant,
    parse_config,
    read_csv,
    refined,
    run_scenario,
)
from inverse_source.noise import add_noise, splitmix64, standard_normals
from inverse_source.stability import epsilon_sq

SMALL_CONFIG = """\
# two quick scenarios
name = bump
fixture = smooth_bump
n_nodes = 513
K_ladder = 5, 10

name = hat_noisy
fixture = triangle_hat
n_nodes = 513
K_ladder = 5 10
noise_level = 1e-3
seed = 7
"""


def test_splitmix64_reference_stream():
    # published first outputs for seed 0
    assert [int(v) for v in splitmix64(0, 3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F,
    ]
    with pytest.raises(ValueError):
        splitmix64(-1, 3)


def test_standard_normals_moments():
    z = standard_normals(12345, 200_001)
    assert z.size == 200_001
    assert abs(z.mean()) < 0.01
    assert abs(z.std() - 1) < 0.01


@pytest.fixture(scope="module")
def clean(grid):
    return boundary_data(make_fixture("two_bumps", grid), make_frequency_grid(20.0))


def test_zero_noise_is_identity(clean):
    same = add_noise(clean, 0.0, 99)
    assert np.array_equal(same.alpha_u_left, clean.alpha_u_left)
    assert np.array_equal(same.alpha_u_right, clean.alpha_u_right)
    with pytest.raises(ValueError):
        add_noise(clean, -1e-3, 1)


def test_noise_is_deterministic_and_seeded(clean):
    a, b = add_noise(clean, 1e-2, 5), add_noise(clean, 1e-2, 5)
    c = add_noise(clean, 1e-2, 6)
    assert np.array_equal(a.alpha_u_left, b.alpha_u_left)
    assert not np.array_equal(a.alpha_u_left, c.alpha_u_left)
    sigma = 1e-2 * max(np.abs(clean.alpha_u_left).max(), np.abs(clean.alpha_u_right).max())
    for noisy in (a, c):
        assert np.max(np.abs(noisy.alpha_u_left - clean.alpha_u_left)) <= 6 * math.sqrt(2) * sigma


def test_noise_draw_order(clean):
    noisy = add_noise(clean, 1e-2, 3)
    sigma = 1e-2 * max(np.abs(clean.alpha_u_left).max(), np.abs(clean.alpha_u_right).max())
    z = standard_normals(3, 8) * sigma
    assert noisy.alpha_u_left[0] - clean.alpha_u_left[0] == pytest.approx(z[0] + 1j * z[1], rel=1e-9)
    assert noisy.alpha_u_right[1] - clean.alpha_u_right[1] == pytest.approx(z[6] + 1j * z[7], rel=1e-9)


def test_noise_energy_matches_expectation(clean):
    delta = 1e-3
    sigma = delta * max(np.abs(clean.alpha_u_left).max(), np.abs(clean.alpha_u_right).max())
    # each trace gains complex noise of variance 2 sigma^2 on (0, K]
    expected = 4 * sigma**2 * clean.K
    noise_only = [
        epsilon_sq(type(clean)(clean.freq_grid, n.alpha_u_left - clean.alpha_u_left,
                               n.alpha_u_right - clean.alpha_u_right))
        for n in (add_noise(clean, delta, seed) for seed in range(8))
    ]
    assert expected / 10 <= np.mean(noise_only) <= 10 * expected
    assert np.mean(noise_only) == pytest.approx(expected, rel=0.1)


def test_scenario_validation():
    with pytest.raises(ValueError):
        Scenario("x", "nope")
    with pytest.raises(ValueError):
        Scenario("x", "zero", K_ladder=(10, 5))
    with pytest.raises(ValueError):
        Scenario("x", "zero", K_ladder=(1.0, 5))
    with pytest.raises(ValueError):
        Scenario("x", "zero", noise_level=-1)


def test_zero_fixture_scan_is_degenerate():
    rows = run_scenario(Scenario("z", "zero", n_nodes=257, K_ladder=(5, 10)))
    for r in rows:
        assert r.epsilon_sq == 0 and r.recon_error_sq == 0 and r.bound_rhs == 0 and r.ratio == 0


def test_clean_bump_scan_decreases():
    rows = run_scenario(Scenario("b", "smooth_bump", n_nodes=1025))
    errs = [r.recon_error_sq for r in rows]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert all(r.k_star >= r.K for r in rows)
    assert empirical_constant(rows) == max(r.ratio for r in rows)


def test_csv_round_trip(tmp_path):
    rows = run_scenario(Scenario("b", "triangle_hat", n_nodes=257, K_ladder=(5,)))
    path = tmp_path / "scan.csv"
    emit_csv(rows, path)
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert len(lines) == 2 and tuple(lines[0].split(",")) == SCAN_HEADER
    assert len(lines[1].split(",")) == len(SCAN_HEADER)
    assert read_csv(path) == rows


def test_csv_errors(tmp_path):
    with pytest.raises(ValueError):
        emit_csv([], tmp_path / "empty.csv")
    row = ScanRow("x", *([1.0] * 9))
    with pytest.raises(OSError):
        emit_csv([row], tmp_path / "missing_dir" / "out.csv")


@settings(max_examples=100, deadline=None)
@given(st.floats(allow_nan=False, allow_infinity=False, width=64))
def test_number_format_round_trips(x):
    from inverse_source.harness import format_number

    assert float(format_number(x)) == x


def test_parse_config():
    scenarios = parse_config(SMALL_CONFIG)
    assert [s.name for s in scenarios] == ["bump", "hat_noisy"]
    assert scenarios[1].K_ladder == (5.0, 10.0) and scenarios[1].seed == 7
    with pytest.raises(ValueError):
        parse_config("name = a\nfixture = zero\ncolour = red\n")
    with pytest.raises(ValueError):
        parse_config("name = a\n")
    with pytest.raises(ValueError):
        parse_config("name = a\nfixture = zero\nname = b\n")


def test_default_suite_and_refinement():
    scenarios = default_scenarios()
    assert {s.fixture for s in scenarios} >= {
        "zero", "constant_patch", "triangle_hat", "smooth_bump", "two_bumps", "odd_bump",
    }
    assert {s.noise_level for s in scenarios} == {0.0, 1e-3}
    fine = refined(scenarios, n_nodes=4097, dalpha=0.025)
    assert all(s.n_nodes == 4097 and s.dalpha == 0.025 for s in fine)
    assert [s.name for s in fine] == [s.name for s in scenarios]


# command line

def test_cli_forward_and_boundary(tmp_path):
    out = tmp_path / "u.csv"
    assert cli.main(["forward", "--fixture", "zero", "--k", "3", "--n", "257", "--out", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "x,re_u,im_u" and len(rows) == 402
    assert all(float(v) == 0 for line in rows[1:] for v in line.split(",")[1:])
    out = tmp_path / "b.csv"
    assert cli.main(["boundary", "--fixture", "odd_bump", "--kmax", "5", "--n", "257", "--out", str(out)]) == 0
    assert out.read_text().startswith("alpha,re_u_left")


def test_cli_reconstruct_summary(tmp_path):
    out = tmp_path / "r.csv"
    code = cli.main(["reconstruct", "--fixture", "smooth_bump", "--kmax", "80", "--out", str(out), "-v"])
    assert code == 0
    summary = out.read_text().splitlines()[-1]
    fields = dict(item.split("=") for item in summary.split()[2:])
    assert float(fields["relative_error"]) <= 1e-3


def test_cli_diagnose(tmp_path):
    out = tmp_path / "d.csv"
    assert cli.main(["diagnose", "--fixture", "triangle_hat", "--n", "513", "--out", str(out)]) == 0
    tables = {line.split(",")[0] for line in out.read_text().splitlines()[1:]}
    assert tables == {"lemma21", "weighted_i", "mu_lower", "tail_ratio", "lemma24"}
    assert cli.main(["diagnose", "--fixture", "zero", "--n", "257", "--out", str(out)]) == 0


@pytest.mark.parametrize("argv", [
    ["forward", "--fixture", "nope", "--k", "1", "--out", "x"],
    ["forward", "--fixture", "zero", "--k", "1", "--n", "100", "--out", "x"],
    ["forward", "--fixture", "zero", "--k", "1", "--k-im", "2", "--out", "x"],
    ["reconstruct", "--fixture", "zero", "--kmax", "1", "--out", "x"],
    ["reconstruct", "--fixture", "zero", "--kmax", "5", "--noise", "-1", "--out", "x"],
    ["scan", "--config", "/nonexistent.cfg", "--out", "x"],
    ["frobnicate"],
    [],
])
def test_cli_usage_errors(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert cli.main(argv) == 2


def test_cli_runtime_error(tmp_path):
    out = tmp_path / "no_such_dir" / "u.csv"
    assert cli.main(["forward", "--fixture", "zero", "--k", "1", "--n", "257", "--out", str(out)]) == 3


def test_cli_scan_is_deterministic(tmp_path):
    cfg = tmp_path / "small.cfg"
    cfg.write_text(SMALL_CONFIG)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(["scan", "--config", str(cfg), "--out", str(a)]) == 0
    assert cli.main(["scan", "--config", str(cfg), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(read_csv(a)) == 4
