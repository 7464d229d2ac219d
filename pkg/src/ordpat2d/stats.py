"""Scalar descriptors of a pattern field: type frequencies, the smoothness
parameter tau = q1 - 1/3, the curve-structure parameter kappa = q2 - q3,
normalized permutation entropy and Jensen-Shannon complexity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import TieBreakPolicy, as_grid, extract_fields
from .errors import EmptyInputError, InvalidInputError

__all__ = [
    "TypeHistogram",
    "PatternHistogram",
    "FeatureVector",
    "type_histogram",
    "pattern_histogram",
    "tau_kappa",
    "alt_params",
    "permutation_entropy",
    "js_complexity",
    "analyze",
]

#: maximal Jensen-Shannon divergence from the uniform 24-pattern
#: distribution, in nats: (log 96 - (25/24) log 25) / 2
Q_MAX = 0.5 * (math.log(96.0) - 25.0 / 24.0 * math.log(25.0))


@dataclass(frozen=True)
class TypeHistogram:
    """Relative frequencies (q1, q2, q3) of the three types over count windows."""

    q: np.ndarray
    count: int

    def __post_init__(self):
        q = np.asarray(self.q, dtype=np.float64)
        object.__setattr__(self, "q", q)
        if q.shape != (3,) or (q < 0).any() or abs(q.sum() - 1.0) > 1e-12:
            raise InvalidInputError("type histogram must be 3 nonnegative values summing to 1")


@dataclass(frozen=True)
class PatternHistogram:
    """Relative frequencies (p1, ..., p24) of the 24 patterns over count windows."""

    p: np.ndarray
    count: int

    def __post_init__(self):
        p = np.asarray(self.p, dtype=np.float64)
        object.__setattr__(self, "p", p)
        if p.shape != (24,) or (p < 0).any() or abs(p.sum() - 1.0) > 1e-12:
            raise InvalidInputError("pattern histogram must be 24 nonnegative values summing to 1")

    def type_histogram(self) -> TypeHistogram:
        """Collapse the three 8-pattern blocks to type frequencies."""
        return TypeHistogram(self.p.reshape(3, 8).sum(axis=1), self.count)


@dataclass(frozen=True)
class FeatureVector:
    """All descriptors of one grid at one delay.

    count is the number of windows (M-d)(N-d); patterns holds the 24
    relative pattern frequencies for downstream use.
    """

    source: str
    delay: int
    count: int
    q1: float
    q2: float
    q3: float
    tau: float
    kappa: float
    entropy: float
    complexity: float
    patterns: np.ndarray


def type_histogram(type_field) -> TypeHistogram:
    """Relative frequencies of types 1, 2, 3 in a type field."""
    field = np.asarray(type_field)
    if field.size == 0:
        raise EmptyInputError("empty type field")
    counts = np.bincount(field.ravel().astype(np.int64), minlength=4)[1:4]
    return TypeHistogram(counts / field.size, int(field.size))


def pattern_histogram(index_field) -> PatternHistogram:
    """Relative frequencies of pattern indices 1..24 in an index field."""
    field = np.asarray(index_field)
    if field.size == 0:
        raise EmptyInputError("empty index field")
    counts = np.bincount(field.ravel().astype(np.int64), minlength=25)[1:25]
    return PatternHistogram(counts / field.size, int(field.size))


def tau_kappa(h: TypeHistogram) -> tuple[float, float]:
    """(tau, kappa) = (q1 - 1/3, q2 - q3).

    tau is maximal (2/3) for smooth ramps, minimal (-1/3) for checkerboards;
    both vanish for white noise.
    """
    q1, q2, q3 = h.q
    return float(q1) - 1.0 / 3.0, float(q2) - float(q3)


def alt_params(h: TypeHistogram) -> tuple[float, float]:
    """The fully uncorrelated alternative pair (q3 - 1/3, q1 - q2)."""
    q1, q2, q3 = h.q
    return float(q3) - 1.0 / 3.0, float(q1) - float(q2)


def _shannon(p: np.ndarray) -> float:
    # raw Shannon entropy in nats, with 0 log 0 = 0
    nz = p[p > 0]
    return float(-(nz * np.log(nz)).sum()) + 0.0  # avoid -0.0


def permutation_entropy(p: PatternHistogram) -> float:
    """Shannon entropy of the 24-pattern distribution, normalized to [0, 1]."""
    return _shannon(p.p) / math.log(24.0)


def js_complexity(p: PatternHistogram) -> float:
    """Jensen-Shannon complexity: normalized entropy times the normalized
    divergence from the uniform pattern distribution.

    The divergence bracket is evaluated with raw entropies in nats and
    divided by its maximum Q_MAX; the final product uses the normalized
    entropy. Zero both for uniform and for degenerate distributions.
    """
    uniform = np.full(24, 1.0 / 24.0)
    bracket = _shannon((p.p + uniform) / 2.0) - 0.5 * _shannon(p.p) - 0.5 * math.log(24.0)
    q = bracket / Q_MAX
    return max(0.0, permutation_entropy(p) * q)


def analyze(grid, d: int = 1, policy: TieBreakPolicy = TieBreakPolicy(),
            source: str = "") -> FeatureVector:
    """Full pipeline: break ties, extract fields, reduce to one FeatureVector."""
    grid = as_grid(grid)
    type_field, index_field = extract_fields(grid, d, policy)
    ph = pattern_histogram(index_field)
    th = ph.type_histogram()
    tau, kappa = tau_kappa(th)
    return FeatureVector(
        source=source,
        delay=d,
        count=th.count,
        q1=float(th.q[0]),
        q2=float(th.q[1]),
        q3=float(th.q[2]),
        tau=tau,
        kappa=kappa,
        entropy=permutation_entropy(ph),
        complexity=js_complexity(ph),
        patterns=ph.p,
    )
