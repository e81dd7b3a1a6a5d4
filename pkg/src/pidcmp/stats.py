"""Paired nonparametric statistics for within-unit condition comparisons.

The signed-rank test is exact: the two-sided p-value enumerates the full
reference distribution over all 2^n sign assignments. Zero differences are
dropped before ranking; tied absolute differences receive mid-ranks, and
exactness is preserved by enumerating sign assignments with those ranks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

__all__ = [
    "PairedSample",
    "wilcoxon_exact",
    "bonferroni",
    "median_quartiles",
]

_MAX_EXACT_N = 25


@dataclass(frozen=True)
class PairedSample:
    """Per-unit values under two conditions, aligned by unit."""

    unit_ids: tuple
    condition1: tuple
    condition2: tuple

    def __post_init__(self):
        ids = tuple(self.unit_ids)
        c1 = tuple(float(v) for v in self.condition1)
        c2 = tuple(float(v) for v in self.condition2)
        if not ids:
            raise ValueError("need at least one unit")
        if len(set(ids)) != len(ids):
            raise ValueError("unit ids must be distinct")
        if len(c1) != len(ids) or len(c2) != len(ids):
            raise ValueError("conditions must provide one value per unit")
        object.__setattr__(self, "unit_ids", ids)
        object.__setattr__(self, "condition1", c1)
        object.__setattr__(self, "condition2", c2)

    def differences(self) -> np.ndarray:
        """Condition-2 minus condition-1, per unit."""
        return np.asarray(self.condition2) - np.asarray(self.condition1)


def wilcoxon_exact(diffs) -> float:
    """Two-sided exact Wilcoxon signed-rank p-value.

    The reference distribution of the positive-rank sum is built by dynamic
    programming over doubled mid-ranks (integers even under ties), which is
    equivalent to enumerating all 2^n sign assignments.
    """
    d = np.asarray(list(diffs), dtype=np.float64)
    if d.size and not np.all(np.isfinite(d)):
        raise ValueError("differences must be finite")
    d = d[d != 0.0]
    n = d.size
    if n == 0:
        raise ValueError("all differences are zero; no test possible")
    if n > _MAX_EXACT_N:
        raise ValueError(f"exact enumeration supports n <= {_MAX_EXACT_N}, got {n}")
    ranks2 = np.rint(2.0 * rankdata(np.abs(d))).astype(np.int64)
    total = int(ranks2.sum())
    counts = np.zeros(total + 1, dtype=np.int64)
    counts[0] = 1
    for w in ranks2:
        shifted = np.zeros_like(counts)
        shifted[w:] = counts[: total + 1 - w]
        counts += shifted
    w_obs = int(ranks2[d > 0.0].sum())
    deviation = abs(2 * w_obs - total)
    sums = np.arange(total + 1, dtype=np.int64)
    extreme = np.abs(2 * sums - total) >= deviation
    return float(int(counts[extreme].sum()) / 2**n)


def bonferroni(p: float, m: int) -> float:
    """min(m*p, 1) for a family of m simultaneous tests."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p-value must lie in [0, 1], got {p!r}")
    if int(m) != m or m < 1:
        raise ValueError(f"family size must be a positive integer, got {m!r}")
    return min(float(m) * p, 1.0)


def median_quartiles(values) -> tuple[float, float, float]:
    """(lower quartile, median, upper quartile) by linear interpolation."""
    arr = np.asarray(list(values), dtype=np.float64)
    if arr.size == 0:
        raise ValueError("need at least one value")
    if not np.all(np.isfinite(arr)):
        raise ValueError("values must be finite")
    q_lower, median, q_upper = np.quantile(arr, (0.25, 0.5, 0.75))
    return (float(q_lower), float(median), float(q_upper))
