"""C_fit under successive grid and frequency refinement."""

import time

from inverse_source.harness import default_scenarios, empirical_constant, refined, run_suite

LEVELS = [(2049, 0.05), (4097, 0.025), (8193, 0.0125)]


def main():
    base = default_scenarios()
    previous = None
    for n, dalpha in LEVELS:
        t0 = time.perf_counter()
        c = empirical_constant(run_suite(refined(base, n_nodes=n, dalpha=dalpha)))
        change = "" if previous is None else f"  change {abs(c / previous - 1):.2e}"
        print(f"n={n:5d} dalpha={dalpha:<7} C_fit={c:.8e}  {time.perf_counter() - t0:6.1f} s{change}")
        previous = c


if __name__ == "__main__":
    main()
