"""Scenario sweeps over the band limit K and their CSV tables."""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .fixtures import FIXTURES, make_fixture
from .forward import boundary_data, make_frequency_grid
from .grid import make_grid
from .noise import add_noise
from .spectral import TailProfile, fourier_from_boundary, reconstruct_bandlimited
from .stability import stability_report

log = logging.getLogger(__name__)

SCAN_HEADER = (
    "scenario", "K", "epsilon_sq", "E", "M", "k_star",
    "bound_rhs", "recon_error_sq", "tail", "ratio",
)


def format_number(x: float) -> str:
    """17 significant digits, round-trip exact, locale independent."""
    return f"{float(x):.16e}"


@dataclass(frozen=True)
class Scenario:
    name: str
    fixture: str
    n_nodes: int = 2049
    K_ladder: tuple[float, ...] = (5.0, 10.0, 20.0, 40.0, 80.0)
    noise_level: float = 0.0
    seed: int = 0
    dalpha: float = 0.05
    # scales the fixture; tiny amplitudes reach the large-E branch of the split rule
    amplitude: float = 1.0

    def __post_init__(self):
        if self.fixture not in FIXTURES:
            raise ValueError(f"unknown fixture {self.fixture!r}")
        ladder = tuple(float(k) for k in self.K_ladder)
        if not ladder:
            raise ValueError("K_ladder is empty")
        if any(b <= a for a, b in zip(ladder, ladder[1:])):
            raise ValueError("K_ladder must be strictly increasing")
        if ladder[0] <= 1:
            raise ValueError("every K must exceed 1")
        if self.noise_level < 0:
            raise ValueError("noise_level must be nonnegative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        object.__setattr__(self, "K_ladder", ladder)


@dataclass(frozen=True)
class ScanRow:
    scenario: str
    K: float
    epsilon_sq: float
    E: float
    M: float
    k_star: float
    bound_rhs: float
    recon_error_sq: float
    tail: float
    ratio: float


def run_scenario(s: Scenario) -> list[ScanRow]:
    """One row per K: noisy data, reconstruction error, and the bound."""
    grid = make_grid(s.n_nodes)
    f = make_fixture(s.fixture, grid)
    if s.amplitude != 1.0:
        f = f.scaled(s.amplitude)
    profile = TailProfile(f, dxi=s.dalpha)
    rows = []
    for K in s.K_ladder:
        clean = boundary_data(f, make_frequency_grid(K, s.dalpha))
        data = add_noise(clean, s.noise_level, s.seed)
        rec = reconstruct_bandlimited(fourier_from_boundary(data), grid, truth=f)
        err_sq = rec.l2_error_vs_truth**2
        rep = stability_report(f, data, err_sq, profile)
        if rep.bound_rhs_unit_c > 0:
            ratio = err_sq / rep.bound_rhs_unit_c
        else:
            log.info("%s K=%g: degenerate bound (zero data), ratio set to 0", s.name, K)
            ratio = 0.0
        rows.append(ScanRow(
            s.name, K, rep.epsilon_sq, rep.E, rep.M, rep.k_star,
            rep.bound_rhs_unit_c, err_sq, profile.tail(K), ratio,
        ))
    return rows


def run_suite(scenarios) -> list[ScanRow]:
    return [row for s in scenarios for row in run_scenario(s)]


def empirical_constant(rows) -> float:
    """Smallest C with recon_error_sq <= C * bound_rhs on every row."""
    return max(row.ratio for row in rows)


def emit_csv(rows, path) -> None:
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to write")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(SCAN_HEADER)
        for row in rows:
            writer.writerow(
                [row.scenario] + [format_number(getattr(row, k)) for k in SCAN_HEADER[1:]]
            )


def read_csv(path) -> list[ScanRow]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != SCAN_HEADER:
            raise ValueError(f"unexpected header {header}")
        return [ScanRow(r[0], *(float(v) for v in r[1:])) for r in reader]


_FIELD_TYPES = {
    "name": str,
    "fixture": str,
    "n_nodes": int,
    "K_ladder": lambda v: tuple(float(t) for t in v.replace(",", " ").split()),
    "noise_level": float,
    "seed": int,
    "dalpha": float,
    "amplitude": float,
}


def parse_config(text: str) -> list[Scenario]:
    """Blank-line separated stanzas of ``key = value`` lines; '#' starts a comment."""
    stanzas, current = [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            if current:
                stanzas.append(current)
                current = {}
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _FIELD_TYPES:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in current:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        current[key] = _FIELD_TYPES[key](value)
    if current:
        stanzas.append(current)
    scenarios = []
    for st in stanzas:
        missing = {"name", "fixture"} - st.keys()
        if missing:
            raise ValueError(f"stanza {st} lacks {sorted(missing)}")
        scenarios.append(Scenario(**st))
    return scenarios


def load_config(path) -> list[Scenario]:
    return parse_config(Path(path).read_text())


def default_scenarios() -> list[Scenario]:
    text = resources.files(__package__).joinpath("default_suite.cfg").read_text()
    return parse_config(text)


def refined(scenarios, n_nodes: int | None = None, dalpha: float | None = None):
    """Copies of ``scenarios`` with grid resolution overridden."""
    changes = {}
    if n_nodes is not None:
        changes["n_nodes"] = n_nodes
    if dalpha is not None:
        changes["dalpha"] = dalpha
    return [replace(s, **changes) for s in scenarios]

