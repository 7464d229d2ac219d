#!/usr/bin/env python3
"""Benchmark the window-scan kernels: numba @njit vs pure numpy.

Usage: python benchmarks/bench_scan.py [side ...]

Times the pattern-index scan of square white-noise grids at delays 1 and
10. The jitted kernel is warmed up once before timing so compilation is
excluded.
"""

import sys
import time

import numpy as np

from ordpat2d import _kernels
from ordpat2d.core import _INDEX_LUT


def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(sides):
    rng = np.random.default_rng(0)
    kernels = [("numpy", _kernels.scan_windows_numpy)]
    if _kernels.scan_windows_jit is not None:
        _kernels.scan_windows_jit(rng.random((8, 8)), 1, _INDEX_LUT)  # warm-up/compile
        kernels.append(("numba", _kernels.scan_windows_jit))
    else:
        print("numba unavailable; timing numpy only")

    print(f"{'side':>6} {'delay':>5} " + " ".join(f"{name:>12}" for name, _ in kernels)
          + "   speedup")
    for side in sides:
        grid = rng.random((side, side))
        for d in (1, 10):
            row = []
            for _, fn in kernels:
                row.append(best_of(lambda: fn(grid, d, _INDEX_LUT)))
            speedup = row[0] / row[-1] if len(row) > 1 else float("nan")
            print(f"{side:>6} {d:>5} " + " ".join(f"{t * 1e3:>10.2f}ms" for t in row)
                  + f"   {speedup:>6.2f}x")


if __name__ == "__main__":
    sides = [int(a) for a in sys.argv[1:]] or [512, 2048]
    main(sides)
