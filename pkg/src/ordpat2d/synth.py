"""Seeded generators of test imagery: white noise, checkerboards, linear
ramps and midpoint-displacement fractal surfaces with a prescribed Hurst
exponent. All generators are deterministic given their seed (PCG64 via
numpy's default_rng; Gaussian draws use the generator's standard_normal).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

__all__ = ["FractalSpec", "white_noise", "checkerboard", "ramp", "fractal_surface"]


def white_noise(rows: int, cols: int, seed: int = 0) -> np.ndarray:
    """i.i.d. uniform values on [0, 1); ties occur with probability 0."""
    if rows < 2 or cols < 2:
        raise InvalidInputError("noise grid must be at least 2x2")
    return np.random.default_rng(seed).random((rows, cols))


def checkerboard(rows: int, cols: int, low: float = 0.0, high: float = 1.0) -> np.ndarray:
    """low where (row + col) is even, high otherwise.

    Every window at odd delay is type III. At even delays the windows are
    constant, so the result there is a pure tie-break artifact.
    """
    if not low < high:
        raise InvalidInputError(f"need low < high, got {low} >= {high}")
    parity = (np.add.outer(np.arange(rows), np.arange(cols)) % 2).astype(np.float64)
    return low + (high - low) * parity


def ramp(rows: int, cols: int, a: float, b: float, c: float = 0.0) -> np.ndarray:
    """Plane x[m, n] = a*m + b*n + c; every window is type I for a, b != 0."""
    if a == 0 or b == 0:
        raise InvalidInputError("ramp requires a != 0 and b != 0")
    return a * np.arange(rows, dtype=np.float64)[:, None] \
        + b * np.arange(cols, dtype=np.float64)[None, :] + c


@dataclass(frozen=True)
class FractalSpec:
    """Parameters of a midpoint-displacement surface of side 2**level + 1.

    Small hurst gives rough surfaces, large hurst smooth ones; sigma0 is
    the scale of the corner values and of the level-l displacements
    sigma0 * 2**(-l * hurst).
    """

    level: int
    hurst: float
    seed: int = 0
    sigma0: float = 1.0

    def __post_init__(self):
        if self.level < 1:
            raise InvalidInputError("level must be >= 1")
        if not 0.0 < self.hurst < 1.0:
            raise InvalidInputError("hurst must lie strictly inside (0, 1)")
        if not self.sigma0 > 0:
            raise InvalidInputError("sigma0 must be positive")

    @property
    def side(self) -> int:
        return 2 ** self.level + 1


def fractal_surface(spec: FractalSpec) -> np.ndarray:
    """Diamond-square surface of shape (2**level + 1, 2**level + 1).

    The four corners are Gaussian with scale sigma0. At refinement level l,
    square centers get the mean of their four corners (diamond step) and
    edge midpoints the mean of their in-grid axial neighbors (square step),
    each plus a Gaussian displacement of scale sigma0 * 2**(-l * hurst).
    Draw order is fixed (diamond before square, raster order within each),
    so output is bit-reproducible for a given seed.
    """
    rng = np.random.default_rng(spec.seed)
    side = spec.side
    grid = np.zeros((side, side))
    corners = spec.sigma0 * rng.standard_normal(4)
    grid[0, 0], grid[0, -1], grid[-1, 0], grid[-1, -1] = corners

    step = side - 1
    for level in range(1, spec.level + 1):
        half = step // 2
        scale = spec.sigma0 * 2.0 ** (-level * spec.hurst)
        sub = grid[::half, ::half]  # view; writes go through to grid
        k = sub.shape[0]

        centers = (sub[:-2:2, :-2:2] + sub[:-2:2, 2::2]
                   + sub[2::2, :-2:2] + sub[2::2, 2::2]) / 4.0
        sub[1::2, 1::2] = centers + scale * rng.standard_normal(centers.shape)

        # edge midpoints: average the 2-4 axial neighbors that exist
        acc = np.zeros((k, k))
        cnt = np.zeros((k, k))
        acc[1:, :] += sub[:-1, :]
        cnt[1:, :] += 1
        acc[:-1, :] += sub[1:, :]
        cnt[:-1, :] += 1
        acc[:, 1:] += sub[:, :-1]
        cnt[:, 1:] += 1
        acc[:, :-1] += sub[:, 1:]
        cnt[:, :-1] += 1
        i, j = np.nonzero(np.add.outer(np.arange(k), np.arange(k)) % 2 == 1)
        sub[i, j] = acc[i, j] / cnt[i, j] + scale * rng.standard_normal(i.size)

        step = half
    return grid
