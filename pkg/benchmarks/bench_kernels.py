"""Benchmark the compiled Matern-5/2 kernel against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from promptbo import _matern_py

try:
    from promptbo import _matern_cy
except ImportError:
    _matern_cy = None


def bench(fn, X, Y, repeats=20):
    fn(X, Y, 0.3, 1.5)  # warm up
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn(X, Y, 0.3, 1.5)
    return (time.perf_counter() - t0) / repeats


def main():
    rng = np.random.default_rng(0)
    print(f"{'n x m x L':>18} {'numpy (ms)':>12} {'cython (ms)':>12} {'speedup':>9}")
    for n, m, L in [(64, 64, 4), (256, 100, 10), (512, 200, 25), (1024, 500, 50)]:
        X, Y = rng.random((n, L)), rng.random((m, L))
        t_py = bench(_matern_py.matern52_cross, X, Y)
        if _matern_cy is not None:
            t_cy = bench(_matern_cy.matern52_cross, X, Y)
            print(f"{f'{n}x{m}x{L}':>18} {t_py * 1e3:12.3f} {t_cy * 1e3:12.3f} {t_py / t_cy:8.2f}x")
        else:
            print(f"{f'{n}x{m}x{L}':>18} {t_py * 1e3:12.3f} {'n/a':>12} {'n/a':>9}")


if __name__ == "__main__":
    main()
