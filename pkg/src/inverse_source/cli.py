"""Command line entry point.

Data goes only to the ``--out`` files; progress and errors go to stderr.
Exit status: 0 success, 2 invalid arguments, 3 runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import sys

import numpy as np

from . import harness
from .fixtures import FIXTURES, make_fixture
from .forward import ComplexFrequency, boundary_data, forward_solve, make_frequency_grid
from .grid import l2_norm_sq, m_constant, make_grid
from .harness import format_number as fmt
from .noise import add_noise
from .spectral import TailProfile, fourier_from_boundary, reconstruct_bandlimited
from .stability import (
    bound_rhs,
    epsilon_sq,
    lemma21_ratios,
    lemma24_diagnostic,
    mu_lower,
    tail_ratio,
    weighted_i_ratio,
)

log = logging.getLogger("inverse_source")

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 2, 3

SECTOR_RADII = (12.5, 25.0, 37.5, 50.0)
SECTOR_ANGLES = tuple(np.linspace(-0.8, 0.8, 5) * np.pi / 4)
TAIL_LADDER = (5.0, 10.0, 20.0, 40.0, 80.0)
LEMMA24_ALPHAS = (0.5, 1.0, 2.0, 4.0)


class UsageError(Exception):
    pass


def sector_grid(radii=SECTOR_RADII, angles=SECTOR_ANGLES) -> list[ComplexFrequency]:
    """Points r*exp(i*theta) strictly inside the sector, radius-major order."""
    return [ComplexFrequency(r * math.cos(t), r * math.sin(t)) for r in radii for t in angles]


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def _odd(value: str) -> int:
    n = int(value)
    if n < 3 or n % 2 == 0:
        raise argparse.ArgumentTypeError("must be an odd integer >= 3")
    return n


def _positive(value: str) -> float:
    x = float(value)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _band_limit(value: str) -> float:
    x = float(value)
    if not x > 1:
        raise argparse.ArgumentTypeError("must exceed 1")
    return x


def cmd_forward(args):
    f = make_fixture(args.fixture, make_grid(args.n))
    try:
        k = ComplexFrequency(args.k, args.k_im)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    x = np.linspace(-1.0, 1.0, args.points)
    u = forward_solve(f, k, x)
    with open(args.out, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(["x", "re_u", "im_u"])
        w.writerows([fmt(xi), fmt(ui.real), fmt(ui.imag)] for xi, ui in zip(x, u))


def cmd_boundary(args):
    f = make_fixture(args.fixture, make_grid(args.n))
    data = boundary_data(f, make_frequency_grid(args.kmax, args.dalpha))
    with open(args.out, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(["alpha", "re_u_left", "im_u_left", "re_u_right", "im_u_right"])
        for a, ul, ur in zip(data.alphas, data.u_left, data.u_right):
            w.writerow([fmt(a), fmt(ul.real), fmt(ul.imag), fmt(ur.real), fmt(ur.imag)])


def cmd_reconstruct(args):
    grid = make_grid(args.n)
    f = make_fixture(args.fixture, grid)
    data = add_noise(
        boundary_data(f, make_frequency_grid(args.kmax, args.dalpha)), args.noise, args.seed
    )
    rec = reconstruct_bandlimited(fourier_from_boundary(data), grid, truth=f)
    eps_sq = epsilon_sq(data)
    bound = bound_rhs(eps_sq, args.kmax, m_constant(f))
    norm = math.sqrt(l2_norm_sq(f))
    with open(args.out, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(["x", "f_true", "re_f_rec", "im_f_rec"])
        for x, ft, fr in zip(grid.nodes, f.values.real, rec.f_rec.values):
            w.writerow([fmt(x), fmt(ft), fmt(fr.real), fmt(fr.imag)])
        rel = rec.l2_error_vs_truth / norm if norm > 0 else 0.0
        fh.write(
            f"# summary l2_error={fmt(rec.l2_error_vs_truth)} relative_error={fmt(rel)}"
            f" epsilon_sq={fmt(eps_sq)} bound_rhs={fmt(bound)}\n"
        )
    log.info("l2 error %.3e (relative %.3e), bound_rhs %.3e", rec.l2_error_vs_truth, rel, bound)


def cmd_scan(args):
    try:
        scenarios = (
            harness.load_config(args.config) if args.config else harness.default_scenarios()
        )
    except (OSError, ValueError, TypeError) as exc:
        raise UsageError(f"bad config: {exc}") from exc
    scenarios = harness.refined(scenarios, args.n_nodes, args.dalpha)
    rows = []
    for s in scenarios:
        log.info("scenario %s", s.name)
        rows.extend(harness.run_scenario(s))
    harness.emit_csv(rows, args.out)
    log.info("empirical constant C_fit = %.6e", harness.empirical_constant(rows))


def cmd_diagnose(args):
    f = make_fixture(args.fixture, make_grid(args.n))
    nonzero = l2_norm_sq(f) > 0
    rows = []
    if nonzero:
        for k in sector_grid():
            s = lemma21_ratios(f, k)
            rows.append(("lemma21", k.re, k.im, "ratio_1", s.lemma21_ratio_1))
            rows.append(("lemma21", k.re, k.im, "ratio_2", s.lemma21_ratio_2))
        for k in (5.0, 50.0):
            rows.append(("weighted_i", k, 0.0, "ratio", weighted_i_ratio(f, k)))
    else:
        log.warning("zero source: lemma21, weighted_i and tail_ratio tables skipped")
    K = 10.0
    for k in np.linspace(0.5, 4.0, 15) * K:
        rows.append(("mu_lower", k, K, "mu", mu_lower(k, K)))
    if nonzero:
        profile = TailProfile(f)
        for k in TAIL_LADDER:
            rows.append(("tail_ratio", k, 0.0, "ratio", tail_ratio(f, k, profile)))
    for a in LEMMA24_ALPHAS:
        for name, value in zip(
            ("lhs_left", "lhs_right", "rhs_left", "rhs_right"), lemma24_diagnostic(f, a)
        ):
            rows.append(("lemma24", a, 0.0, name, value))
    with open(args.out, "w", newline="") as fh:
        w = _writer(fh)
        w.writerow(["table", "p1", "p2", "quantity", "value"])
        w.writerows([t, fmt(p1), fmt(p2), q, fmt(v)] for t, p1, p2, q, v in rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inverse-source",
        description="1D multifrequency inverse source laboratory.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    fixtures = sorted(FIXTURES)

    p = sub.add_parser("forward", parents=[common], help="solve the direct problem at one wave number")
    p.add_argument("--fixture", required=True, choices=fixtures)
    p.add_argument("--k", required=True, type=_positive)
    p.add_argument("--k-im", type=float, default=0.0, help="imaginary part of k")
    p.add_argument("--n", type=_odd, default=2049)
    p.add_argument("--points", type=int, default=401)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("boundary", parents=[common], help="synthesize multifrequency boundary data")
    p.add_argument("--fixture", required=True, choices=fixtures)
    p.add_argument("--kmax", required=True, type=_positive)
    p.add_argument("--dalpha", type=_positive, default=0.05)
    p.add_argument("--n", type=_odd, default=2049)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("reconstruct", parents=[common], help="band-limited reconstruction from boundary data")
    p.add_argument("--fixture", required=True, choices=fixtures)
    p.add_argument("--kmax", required=True, type=_band_limit)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dalpha", type=_positive, default=0.05)
    p.add_argument("--n", type=_odd, default=2049)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("scan", parents=[common], help="run K sweeps for every scenario in a config")
    p.add_argument("--config", help="scenario file (default: bundled suite)")
    p.add_argument("--n-nodes", type=_odd, help="override n_nodes of every scenario")
    p.add_argument("--dalpha", type=_positive, help="override dalpha of every scenario")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("diagnose", parents=[common], help="inequality diagnostics for one fixture")
    p.add_argument("--fixture", required=True, choices=fixtures)
    p.add_argument("--n", type=_odd, default=2049)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_diagnose)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if getattr(args, "noise", 0.0) < 0:
        print("error: --noise must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    if not 0 <= getattr(args, "seed", 0) < 2**64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_USAGE
    try:
        args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - reported as runtime failure
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
