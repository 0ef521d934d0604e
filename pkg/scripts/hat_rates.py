"""Observed decay rates for the triangle hat.

Prints the reconstruction error ratio per band-limit doubling and the tail
exponent, next to the values implied by |fhat| ~ xi^-2
(tail ~ K^-3, error ratio 2^-1.5).
"""

import math

from inverse_source.fixtures import make_fixture
from inverse_source.forward import boundary_data, make_frequency_grid
from inverse_source.grid import make_grid
from inverse_source.spectral import TailProfile, fourier_from_boundary, reconstruct_bandlimited
from inverse_source.stability import tail_ratio

LADDER = (5.0, 10.0, 20.0, 40.0, 80.0, 160.0)


def main():
    f = make_fixture("triangle_hat", make_grid(4097))
    prof = TailProfile(f)
    prev = None
    print(f"{'K':>6}{'error':>12}{'ratio':>8}{'tail':>12}{'exponent':>10}{'tail_ratio':>12}")
    for K in LADDER:
        data = boundary_data(f, make_frequency_grid(K))
        err = reconstruct_bandlimited(fourier_from_boundary(data), f.grid, truth=f).l2_error_vs_truth
        tail = prof.tail(K)
        if prev:
            ratio, expo = f"{err / prev[0]:8.3f}", f"{math.log2(prev[1] / tail):10.2f}"
        else:
            ratio, expo = " " * 8, " " * 10
        print(f"{K:6.0f}{err:12.4e}{ratio}{tail:12.4e}{expo}{tail_ratio(f, K, prof):12.4e}")
        prev = (err, tail)
    print(f"expected ratio {2 ** -1.5:.3f}, expected exponent 3")


if __name__ == "__main__":
    main()
