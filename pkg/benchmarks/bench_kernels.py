"""Compiled vs pure-Python kernels: special functions and full solves.

    python benchmarks/bench_kernels.py [--solves N] [--repeat R]
"""

import argparse
import time

import numpy as np

from mushy_stefan.numerics import _kernels_py
from mushy_stefan.sampling import random_convective, rng_for
from mushy_stefan.transcendental import ConvectiveFamily, compute_threshold

try:
    from mushy_stefan.numerics import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_special(k, xs):
    def run():
        for x in xs:
            k.erf(x)
            k.erfc(x)
            k.erfcx(x)
    return run


def bench_solves(k, cases):
    def run():
        for fam, bracket in cases:
            k.solve_residual(*bracket, *fam._args, fam.lat, 1e-14, 4 * 2.220446049250313e-16, 200)
    return run


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--solves", type=int, default=100)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    xs = [float(x) for x in np.linspace(0.01, 6.0, 20_000)]
    rng = rng_for(0)
    cases = []
    for _ in range(args.solves):
        mp, bc = random_convective(rng)
        compute_threshold(mp, bc)
        fam = ConvectiveFamily(mp, bc)
        hi = 1e-10
        while fam._raw_residual(hi) > 0:
            hi *= 2
        cases.append((fam, (1e-10, hi)))

    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.append(("compiled", _kernels))
    else:
        print("compiled extension not built; timing the fallback only")

    results = {}
    for name, k in backends:
        results[name] = (
            best_of(bench_special(k, xs), args.repeat),
            best_of(bench_solves(k, cases), args.repeat),
        )
    print(f"{'backend':<10} {'erf/erfc/erfcx x' + str(len(xs)):>24} {str(args.solves) + ' solves':>14}")
    for name, (a, b) in results.items():
        print(f"{name:<10} {a * 1e3:>21.2f} ms {b * 1e3:>11.2f} ms")
    if len(results) == 2:
        (pa, pb), (ca, cb) = results["python"], results["compiled"]
        print(f"{'speedup':<10} {pa / ca:>22.1f}x {pb / cb:>12.1f}x")


if __name__ == "__main__":
    main()
