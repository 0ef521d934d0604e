"""Run the bundled scenario suite and report the fitted constant per scenario."""

import argparse
from collections import defaultdict

from inverse_source.harness import default_scenarios, emit_csv, empirical_constant, load_config, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", help="scenario file (default: bundled suite)")
    ap.add_argument("--out", default="scan.csv")
    args = ap.parse_args()
    scenarios = load_config(args.config) if args.config else default_scenarios()
    rows = run_suite(scenarios)
    emit_csv(rows, args.out)
    by_name = defaultdict(list)
    for r in rows:
        by_name[r.scenario].append(r)
    print(f"{'scenario':<24}{'max ratio':>14}{'k*/K at K=5':>14}")
    for name, rs in by_name.items():
        print(f"{name:<24}{max(r.ratio for r in rs):>14.4e}{rs[0].k_star / rs[0].K:>14.3f}")
    print(f"C_fit = {empirical_constant(rows):.6e}  ({len(rows)} rows -> {args.out})")


if __name__ == "__main__":
    main()
