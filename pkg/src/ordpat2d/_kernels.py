"""Window-scan kernels: numba-jitted hot path with a pure-numpy fallback.

Set ORDPAT2D_DISABLE_NUMBA=1 to force the numpy path (useful for debugging
and for the benchmark in benchmarks/bench_scan.py, which times both).
Both kernels take a 256-entry lookup table mapping the 2-bit-packed rank
key of a window to its pattern index 1..24 (0 for non-permutations, i.e.
windows that still contain ties).
"""

import os

import numpy as np

NUMBA_DISABLED = os.environ.get("ORDPAT2D_DISABLE_NUMBA", "") in ("1", "true", "yes")

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None


def scan_windows_numpy(values, d, lut):
    """Pattern-index field of all 2x2 windows at delay d (vectorized)."""
    w1 = values[:-d, :-d]
    w2 = values[:-d, d:]
    w3 = values[d:, :-d]
    w4 = values[d:, d:]
    r1 = (w2 < w1).astype(np.uint8) + (w3 < w1) + (w4 < w1)
    r2 = (w1 < w2).astype(np.uint8) + (w3 < w2) + (w4 < w2)
    r3 = (w1 < w3).astype(np.uint8) + (w2 < w3) + (w4 < w3)
    r4 = (w1 < w4).astype(np.uint8) + (w2 < w4) + (w3 < w4)
    key = (r1 << 6) | (r2 << 4) | (r3 << 2) | r4
    return lut[key]


def _scan_windows_loop(values, d, lut):
    rows = values.shape[0] - d
    cols = values.shape[1] - d
    out = np.empty((rows, cols), dtype=np.uint8)
    for m in range(rows):
        for n in range(cols):
            w1 = values[m, n]
            w2 = values[m, n + d]
            w3 = values[m + d, n]
            w4 = values[m + d, n + d]
            r1 = (w2 < w1) + (w3 < w1) + (w4 < w1)
            r2 = (w1 < w2) + (w3 < w2) + (w4 < w2)
            r3 = (w1 < w3) + (w2 < w3) + (w4 < w3)
            r4 = (w1 < w4) + (w2 < w4) + (w3 < w4)
            out[m, n] = lut[(r1 << 6) | (r2 << 4) | (r3 << 2) | r4]
    return out


if njit is not None:
    scan_windows_jit = njit(cache=True)(_scan_windows_loop)
else:  # pragma: no cover
    scan_windows_jit = None

if scan_windows_jit is not None and not NUMBA_DISABLED:
    scan_windows = scan_windows_jit
else:
    scan_windows = scan_windows_numpy
