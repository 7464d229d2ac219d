"""2x2 ordinal patterns of a grid: ranking, the three types, field extraction.

A grid is any 2D array of finite real numbers. Every 2x2 window (at delay d:
the four grid values d steps apart) is replaced by its rank pattern, one of
the 24 permutations of (1,2,3,4), laid out row-major. The 24 patterns fall
into three types of 8 patterns each:

  type I   -- both rows and both columns ordered the same way (smooth),
  type II  -- ordered along one axis only (edges, curves),
  type III -- one diagonal entirely above the other (saddles, noise).

Pattern indices 1..8 are type I, 9..16 type II, 17..24 type III,
lexicographic by (r1, r2, r3, r4) within each type block.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from . import _kernels
from .errors import DelayTooLargeError, InvalidInputError, TieViolationError

__all__ = [
    "TieBreakPolicy",
    "PATTERNS",
    "as_grid",
    "break_ties",
    "rank_window",
    "classify_type",
    "pattern_index",
    "type_of_index",
    "extract_fields",
]


@dataclass(frozen=True)
class TieBreakPolicy:
    """How equal grid values are forced into a strict order before ranking.

    mode "noise" adds seeded uniform noise on [0, delta); "deterministic"
    adds i*delta at flat index i (row-major), imposing a total order.
    delta = epsilon * (smallest nonzero gap between distinct grid values),
    so strict inequalities already present in the grid survive as long as
    epsilon * grid.size < 1.
    """

    mode: str = "noise"
    epsilon: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("noise", "deterministic"):
            raise InvalidInputError(f"unknown tie-break mode {self.mode!r}")
        if not (self.epsilon > 0):
            raise InvalidInputError("epsilon must be positive")


def as_grid(values) -> np.ndarray:
    """Validate and return a float64 grid (2D, finite, at least 2x2)."""
    grid = np.asarray(values, dtype=np.float64)
    if grid.ndim != 2:
        raise InvalidInputError(f"grid must be 2D, got shape {grid.shape}")
    if grid.shape[0] < 2 or grid.shape[1] < 2:
        raise InvalidInputError(f"grid must be at least 2x2, got {grid.shape}")
    if not np.isfinite(grid).all():
        raise InvalidInputError("grid contains non-finite values")
    return grid


def _min_gap(grid: np.ndarray) -> float:
    distinct = np.unique(grid)
    if distinct.size < 2:
        return 1.0
    return float(np.diff(distinct).min())


def break_ties(grid, policy: TieBreakPolicy = TieBreakPolicy()) -> np.ndarray:
    """Return a perturbed copy of the grid with (a.s.) no equal values.

    The perturbation amplitude is strictly below the smallest gap between
    distinct values for any reasonable epsilon, so existing strict
    inequalities are preserved.
    """
    grid = as_grid(grid)
    delta = policy.epsilon * _min_gap(grid)
    if policy.mode == "deterministic":
        bump = delta * np.arange(grid.size, dtype=np.float64).reshape(grid.shape)
    else:
        rng = np.random.default_rng(policy.seed)
        bump = rng.uniform(0.0, delta, size=grid.shape)
    return grid + bump


def rank_window(w1: float, w2: float, w3: float, w4: float) -> tuple[int, int, int, int]:
    """Rank numbers of a 2x2 window: r_k = #{j : w_j <= w_k}, 1=min, 4=max."""
    w = (w1, w2, w3, w4)
    if len(set(w)) < 4:
        raise TieViolationError(f"window {w} contains equal values; break ties first")
    return tuple(sum(bool(x <= y) for x in w) for y in w)


def classify_type(w1: float, w2: float, w3: float, w4: float) -> int:
    """Type 1, 2 or 3 of a 2x2 window, computed directly from the values.

    Counts row-wise and column-wise ascents; two ascents in a direction
    count as zero. Equivalent to: the type is the rank number sharing a
    diagonal with rank 4.
    """
    if len({w1, w2, w3, w4}) < 4:
        raise TieViolationError("window contains equal values; break ties first")
    # bool() guards against numpy scalars, whose + is logical, not additive
    a = bool(w1 < w2) + bool(w3 < w4)
    if a == 2:
        a = 0
    b = bool(w1 < w3) + bool(w2 < w4)
    if b == 2:
        b = 0
    return a + b + 1


def _canonical_order() -> list[tuple[int, int, int, int]]:
    quads = list(permutations((1, 2, 3, 4)))
    return sorted(quads, key=lambda q: (classify_type(*q), q))


#: pattern index i (1-based) -> rank quad PATTERNS[i-1]
PATTERNS: list[tuple[int, int, int, int]] = _canonical_order()
_PATTERN_INDEX = {q: i + 1 for i, q in enumerate(PATTERNS)}


def _index_lut() -> np.ndarray:
    lut = np.zeros(256, dtype=np.uint8)
    for quad, idx in _PATTERN_INDEX.items():
        key = (quad[0] - 1) << 6 | (quad[1] - 1) << 4 | (quad[2] - 1) << 2 | (quad[3] - 1)
        lut[key] = idx
    return lut


_INDEX_LUT = _index_lut()


def pattern_index(quad) -> int:
    """Canonical index 1..24 of a rank quad; 1-8 type I, 9-16 II, 17-24 III."""
    quad = tuple(int(r) for r in quad)
    if quad not in _PATTERN_INDEX:
        raise InvalidInputError(f"{quad} is not a permutation of (1,2,3,4)")
    return _PATTERN_INDEX[quad]


def type_of_index(index) -> int:
    """Type 1..3 of a pattern index 1..24 (vectorized over arrays)."""
    index = np.asarray(index)
    if ((index < 1) | (index > 24)).any():
        raise InvalidInputError("pattern index out of range 1..24")
    result = (index - 1) // 8 + 1
    return int(result) if result.ndim == 0 else result.astype(np.uint8)


def extract_fields(grid, d: int, policy: TieBreakPolicy = TieBreakPolicy()):
    """Type field and pattern-index field of all windows at delay d.

    Both outputs have shape (M-d, N-d); entry (m, n) describes the window
    (x[m,n], x[m,n+d], x[m+d,n], x[m+d,n+d]) of the tie-broken grid.
    """
    grid = as_grid(grid)
    if d < 1:
        raise InvalidInputError(f"delay must be >= 1, got {d}")
    if d >= min(grid.shape):
        raise DelayTooLargeError(
            f"delay {d} too large for grid of shape {grid.shape}"
        )
    broken = break_ties(grid, policy)
    index_field = _kernels.scan_windows(broken, d, _INDEX_LUT)
    if (index_field == 0).any():
        raise TieViolationError("ties survived tie breaking; decrease epsilon or reseed")
    type_field = ((index_field - 1) // 8 + 1).astype(np.uint8)
    return type_field, index_field
