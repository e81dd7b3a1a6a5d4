"""Independent oracles for the test suite.

Everything here is computed from first principles with plain numpy/stdlib
(plus numba for speed in the exhaustive grid search), deliberately sharing no
code with the package under test:

- direct-definition entropy and mutual information (probability-weighted
  log-ratio sums, no entropy-difference shortcuts);
- the exact two-sided Wilcoxon signed-rank p-value by full enumeration of all
  2^n sign assignments with hand-computed mid-ranks;
- an exhaustive grid search for the minimum of I(Y;B,A) over the polytope of
  distributions preserving both (Y,B) and (Y,A) marginals, for 2x2x2 and
  2x2x3 tables, stepping every free coordinate at 1e-3.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from numba import njit

GRID_STEP = 1e-3


# ---------------------------------------------------------------------------
# direct-definition information measures


def entropy_direct(p) -> float:
    """-sum p log2 p over positive cells, by direct summation."""
    total = 0.0
    for v in np.asarray(p, dtype=np.float64).ravel():
        if v > 0.0:
            total -= v * math.log2(v)
    return total


def mi_direct(pxy) -> float:
    """I(X;Y) from a 2-D joint table by the probability-weighted log-ratio."""
    pxy = np.asarray(pxy, dtype=np.float64)
    px = pxy.sum(axis=1)
    py = pxy.sum(axis=0)
    total = 0.0
    for i in range(pxy.shape[0]):
        for j in range(pxy.shape[1]):
            v = pxy[i, j]
            if v > 0.0:
                total += v * math.log2(v / (px[i] * py[j]))
    return total


def joint_mi_direct(p) -> float:
    """I(Y;B,A) from a 3-D table, treating (B,A) as one composite variable."""
    p = np.asarray(p, dtype=np.float64)
    return mi_direct(p.reshape(p.shape[0], -1))


def conditional_mi_direct(p, given_axis: int) -> float:
    """I of the two non-conditioned axes given the named axis of a 3-D table."""
    p = np.asarray(p, dtype=np.float64)
    pg = p.sum(axis=tuple(i for i in range(3) if i != given_axis))
    total = 0.0
    for g in range(p.shape[given_axis]):
        slab = np.take(p, g, axis=given_axis)
        if pg[g] > 0.0:
            total += pg[g] * mi_direct(slab / pg[g])
    return total


# ---------------------------------------------------------------------------
# exact Wilcoxon signed-rank by full sign enumeration


def _midranks(values) -> list[float]:
    """Rank of each value with ties sharing the average of their positions."""
    ranks = []
    for v in values:
        less = sum(1 for u in values if u < v)
        equal = sum(1 for u in values if u == v)
        ranks.append(less + (equal + 1) / 2.0)
    return ranks


def wilcoxon_enumeration(diffs) -> float:
    """Two-sided exact signed-rank p-value by brute force over sign vectors.

    Zero differences are dropped; an assignment is at least as extreme as the
    observation when its positive-rank sum lies at least as far from the null
    mean. Practical only for n <= ~16.
    """
    d = [float(v) for v in diffs if float(v) != 0.0]
    n = len(d)
    if n == 0:
        raise ValueError("all differences are zero")
    ranks = _midranks([abs(v) for v in d])
    total = sum(ranks)
    w_obs = sum(r for r, v in zip(ranks, d) if v > 0.0)
    dev_obs = abs(2.0 * w_obs - total)
    hits = 0
    for signs in itertools.product((0, 1), repeat=n):
        w = sum(r for r, s in zip(ranks, signs) if s)
        if abs(2.0 * w - total) >= dev_obs - 1e-9:
            hits += 1
    return hits / 2.0**n


# ---------------------------------------------------------------------------
# exhaustive minimization of I(Y;B,A) with both (Y,B) and (Y,A) marginals fixed
#
# The polytope factorizes per y-slice into a transportation polytope with row
# sums P(y, b) and column sums P(y, a). A 2x2 slice has one free coordinate, a
# 2x3 slice two; the objective couples the slices only through the cell-wise
# mixture M = sum_y Q_y:
#
#   I(Y;B,A) = H(Y) + H(M) - sum_y S(Q_y),  S(t) = -sum t log2 t.
#
# We enumerate each slice's feasible tables on the step grid of its free
# coordinates (endpoints included) and scan all cross-slice combinations.


def _axis_values(lo: float, hi: float, step: float) -> np.ndarray:
    if hi < lo:
        return np.empty(0)
    values = [lo + k * step for k in range(int(math.floor((hi - lo) / step)) + 1)]
    if hi - values[-1] > 1e-12:
        values.append(hi)
    return np.asarray(values)


def _slice_candidates_2(r: np.ndarray, c: np.ndarray, step: float) -> np.ndarray:
    """All step-grid tables with row sums r (2) and column sums c (2), flat."""
    lo = max(0.0, r[0] - c[1])
    hi = min(r[0], c[0])
    out = []
    for t in _axis_values(lo, hi, step):
        q = (t, r[0] - t, c[0] - t, c[1] - r[0] + t)
        out.append(q)
    return np.clip(np.asarray(out).reshape(-1, 4), 0.0, None)


def _slice_candidates_3(r: np.ndarray, c: np.ndarray, step: float) -> np.ndarray:
    """All step-grid tables with row sums r (2) and column sums c (3), flat."""
    out = []
    for t0 in _axis_values(0.0, min(r[0], c[0]), step):
        lo1 = max(0.0, r[0] - c[2] - t0)
        hi1 = min(c[1], r[0] - t0)
        for t1 in _axis_values(lo1, hi1, step):
            t2 = r[0] - t0 - t1
            out.append((t0, t1, t2, c[0] - t0, c[1] - t1, c[2] - t2))
    if not out:
        raise ValueError("empty slice polytope")
    return np.clip(np.asarray(out).reshape(-1, 6), 0.0, None)


@njit(cache=True)
def _neg_plogp(v: float) -> float:
    if v > 0.0:
        return -v * np.log2(v)
    return 0.0


@njit(cache=True)
def _table_scores(tables: np.ndarray) -> np.ndarray:
    n, width = tables.shape
    s = np.zeros(n)
    for i in range(n):
        acc = 0.0
        for k in range(width):
            acc += _neg_plogp(tables[i, k])
        s[i] = acc
    return s


@njit(cache=True, fastmath=True)
def _best_pair(qa: np.ndarray, sa: np.ndarray, qb: np.ndarray, sb: np.ndarray) -> float:
    na, width = qa.shape
    nb = qb.shape[0]
    best = np.inf
    for i in range(na):
        for j in range(nb):
            hm = 0.0
            for k in range(width):
                hm += _neg_plogp(qa[i, k] + qb[j, k])
            v = hm - sa[i] - sb[j]
            if v < best:
                best = v
    return best


def broja_grid_search(p: np.ndarray, step: float = GRID_STEP) -> float:
    """Exhaustive-grid minimum of I(Y;B,A) over the marginal-preserving
    polytope of a 2 x 2 x {2,3} table, in bits."""
    p = np.asarray(p, dtype=np.float64)
    ny, nb, na = p.shape
    if ny != 2 or nb != 2 or na not in (2, 3):
        raise ValueError(f"oracle supports 2x2x2 and 2x2x3 tables, got {p.shape}")
    make = _slice_candidates_2 if na == 2 else _slice_candidates_3
    tables = []
    scores = []
    h_y = 0.0
    for y in range(ny):
        r = p[y].sum(axis=1)
        c = p[y].sum(axis=0)
        h_y += _neg_plogp_py(float(r.sum()))
        cand = make(r, c, step)
        tables.append(np.ascontiguousarray(cand))
        scores.append(_table_scores(cand))
    best = _best_pair(tables[0], scores[0], tables[1], scores[1])
    return h_y + best


def _neg_plogp_py(v: float) -> float:
    if v > 0.0:
        return -v * math.log2(v)
    return 0.0
