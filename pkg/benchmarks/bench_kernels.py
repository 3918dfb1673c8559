#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py

Times the three hot kernels on workloads shaped like the verification
suites (sweep-scale convolutions, batch polynomial evaluation, deep Laurent
windows at scan-scale batches).
"""

import time

import numpy as np

from qslice._kernels import backends


def _timeit(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    impls = backends()
    if "native" not in impls:
        print("native extension not built; showing python backend only")

    rng = np.random.default_rng(0)
    conv_a = rng.uniform(-1, 1, (65, 4))
    conv_b = rng.uniform(-1, 1, (65, 4))
    poly_c = rng.uniform(-1, 1, (17, 4))
    poly_pts = rng.uniform(-1, 1, (100_000, 4))
    alpha = rng.uniform(-1, 1, 121) + 1j * rng.uniform(-1, 1, 121)
    beta = rng.uniform(-1, 1, 121) + 1j * rng.uniform(-1, 1, 121)
    iunit = np.array([0.0, 1.0, 0.0, 0.0])
    junit = np.array([0.0, 0.0, 1.0, 0.0])
    lau_pts = rng.uniform(-1, 1, (20_000, 4))

    workloads = [
        ("star_convolve deg 64 x 64",
         lambda impl: impl.star_convolve(conv_a, conv_b)),
        ("poly_eval deg 16 @ 100k pts",
         lambda impl: impl.poly_eval(poly_c, poly_pts)),
        ("laurent_eval window 121 @ 20k pts",
         lambda impl: impl.laurent_eval(0.1, 0.9, iunit, junit, alpha, beta,
                                        -40, lau_pts, 1e-12)),
    ]

    print(f"{'workload':38s} " + " ".join(f"{name:>12s}" for name in impls))
    for label, call in workloads:
        times = {name: _timeit(lambda: call(impl)) for name, impl in impls.items()}
        row = f"{label:38s} " + " ".join(f"{times[name]*1e3:10.2f}ms" for name in impls)
        if "native" in times and "python" in times and times["native"] > 0:
            row += f"   (x{times['python'] / times['native']:.1f})"
        print(row)


if __name__ == "__main__":
    main()
