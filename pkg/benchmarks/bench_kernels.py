"""Compare the numba kernels with the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times the Taylor-remainder kernel and the first-form integrand on arrays of
quadrature-node size, then a full finite-coupling sum at p = 5, on both
paths.  Compilation happens once before timing.
"""

import argparse
import math
import timeit

import numpy as np

from extres import _jit, kernels
from extres.extension import extend
from extres.models import anharmonic_series
from extres.resummation import resum_coupling


def best(fn, repeat, number):
    return min(timeit.repeat(fn, repeat=repeat, number=number)) / number


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not _jit.HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    ext = extend(anharmonic_series(5))
    poly = np.array([complex(a) * (-1) ** i / math.factorial(i)
                     for i, a in enumerate(ext.a_coeffs)])
    taylor = kernels.taylor_coefficients(poly)
    wz = ext.omega * 2 ** (1 / 3)
    args_ff = (2, -1, 3, wz, poly, taylor, 1)

    print(f"{'kernel':<28}{'size':>8}{'numpy':>12}{'numba':>12}{'speedup':>10}")
    for n in (500, 5_000, 50_000):
        t = np.geomspace(1e-6, 6.0, n)
        s = (wz * t).astype(complex) ** 3
        kernels.taylor_remainder_numba(s, poly, taylor, 1)
        kernels.first_form_integrand_numba(t, *args_ff)
        number = max(1, 20_000 // n)
        for name, f_np, f_nb in (
            ("taylor_remainder", lambda: kernels.taylor_remainder_numpy(s, poly, taylor, 1),
             lambda: kernels.taylor_remainder_numba(s, poly, taylor, 1)),
            ("first_form_integrand", lambda: kernels.first_form_integrand_numpy(t, *args_ff),
             lambda: kernels.first_form_integrand_numba(t, *args_ff)),
        ):
            a, b = best(f_np, args.repeat, number), best(f_nb, args.repeat, number)
            print(f"{name:<28}{n:>8}{a * 1e6:>10.1f}us{b * 1e6:>10.1f}us{a / b:>9.1f}x")

    def full(flag):
        _jit.USE_NUMBA = flag
        return resum_coupling(ext, 2.0)

    full(True)
    a, b = best(lambda: full(False), args.repeat, 3), best(lambda: full(True), args.repeat, 3)
    print(f"{'resum p=5, lambda=2':<28}{'':>8}{a * 1e3:>10.2f}ms{b * 1e3:>10.2f}ms{a / b:>9.1f}x")


if __name__ == "__main__":
    main()
