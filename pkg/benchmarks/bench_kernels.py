"""Timing of the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Also times one oracle solve and one comb round trip with the active backend
(set REMEZKIT_NO_JIT=1 to time those on the numpy path).
"""

import argparse
import math
import time

import numpy as np

from remezkit import _kernels
from remezkit.arcset import ArcSet
from remezkit.comb import CombDomain, solve_prevertices_from_comb
from remezkit.oracle import OracleProblem, solve_problem_d


def best_of(fn, repeat):
    fn()  # compile / warm caches
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_cases(rng):
    coeffs = (rng.standard_normal(17) + 1j * rng.standard_normal(17)).astype(np.complex128)
    x = np.ascontiguousarray(rng.uniform(0, 2 * math.pi, 200_000))
    lo = np.ascontiguousarray(rng.uniform(0, 2 * math.pi, 5_000))
    hi = lo + 0.01
    A = np.ascontiguousarray(rng.standard_normal((50_000, 12)))
    y = np.ascontiguousarray(rng.standard_normal(12))
    b = np.ones(50_000)
    skip = np.zeros(50_000, dtype=bool)
    g = 6
    a = np.sort(rng.uniform(0, 2 * math.pi, g))
    c = a + 0.05
    bb = a + 0.1
    z = np.ascontiguousarray(rng.uniform(0, 2 * math.pi, 50_000) + 0.3j)
    return {
        "circle_abs2": lambda m: m.circle_abs2(coeffs, x),
        "golden_max": lambda m: m.golden_max(coeffs, lo, hi, 60),
        "price_dantzig": lambda m: m.price_dantzig(A, y, b, 1e-9, skip),
        "comb_kernel": lambda m: m.comb_kernel(z, a, bb, c),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'kernel':<16}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for name, call in kernel_cases(rng).items():
        t_np = best_of(lambda: call(_kernels.numpy_impl), args.repeat)
        if _kernels.numba_impl is None:
            print(f"{name:<16}{1e3 * t_np:>12.2f}{'-':>12}{'-':>10}")
            continue
        t_nb = best_of(lambda: call(_kernels.numba_impl), args.repeat)
        print(f"{name:<16}{1e3 * t_np:>12.2f}{1e3 * t_nb:>12.2f}{t_np / t_nb:>10.1f}")

    backend = "numpy" if _kernels.backend is _kernels.numpy_impl else "numba"
    E = ArcSet.single_gap(math.pi)
    t = best_of(lambda: solve_problem_d(OracleProblem(8, E, 0.0)), 1)
    print(f"oracle n=8, s=pi ({backend}): {t:.2f} s")
    C = CombDomain(3, [(0.0, 0.8), (2 * math.pi / 3, 0.5), (4 * math.pi / 3, 0.3)])
    t = best_of(lambda: solve_prevertices_from_comb(C), 1)
    print(f"comb prevertices, 3 slits ({backend}): {t:.2f} s")


if __name__ == "__main__":
    main()
