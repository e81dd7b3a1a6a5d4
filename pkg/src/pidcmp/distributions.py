"""Finite trivariate joint distributions over (Y, B, A) and their construction
from trial and grid records.

Variable order is (Y, B, A) everywhere: Y is the categorized spike-count
output, B the basal (somatic) input, A the apical (dendritic) input.
Distributions are dense float64 tables; structural zeros are kept explicitly.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Alphabet",
    "JointDistribution",
    "TrialRecord",
    "GridRecord",
    "CountRange",
    "BinningConfig",
    "CONDITIONS",
    "TRIALS_HEADER",
    "GRID_HEADER",
    "build_joint",
    "marginal",
    "bin_quantile",
    "categorize_output",
    "parse_output_categories",
    "ingest_trials",
    "ingest_grid",
    "match_support",
    "read_trials_csv",
    "read_grid_csv",
]

CONDITIONS = ("control", "treatment")

TRIALS_HEADER = ("unit_id", "condition", "bin_index", "mean_basal", "mean_apical", "spike_count")
GRID_HEADER = ("n_basal", "n_apical", "spike_count")

_AXIS_NAMES = ("y", "b", "a")


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of distinct symbol labels with a stable index."""

    labels: tuple
    _lookup: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        if not labels:
            raise ValueError("alphabet must contain at least one label")
        lookup = {}
        for i, lab in enumerate(labels):
            if lab in lookup:
                raise ValueError(f"duplicate alphabet label {lab!r}")
            lookup[lab] = i
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_lookup", lookup)

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self._lookup[label]
        except KeyError:
            raise KeyError(f"label {label!r} not in alphabet") from None


def _as_alphabet(x) -> Alphabet:
    return x if isinstance(x, Alphabet) else Alphabet(tuple(x))


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """Immutable normalized probability table over (Y, B, A)."""

    alpha_y: Alphabet
    alpha_b: Alphabet
    alpha_a: Alphabet
    pmf: np.ndarray

    def __post_init__(self):
        pmf = np.array(self.pmf, dtype=np.float64)
        expected = (len(self.alpha_y), len(self.alpha_b), len(self.alpha_a))
        if pmf.shape != expected:
            raise ValueError(f"pmf shape {pmf.shape} does not match alphabets {expected}")
        if not np.all(np.isfinite(pmf)):
            raise ValueError("pmf entries must be finite")
        if pmf.min(initial=0.0) < 0.0:
            raise ValueError("pmf entries must be nonnegative")
        total = float(pmf.sum())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"pmf sums to {total!r}, expected 1 within 1e-12")
        pmf.setflags(write=False)
        object.__setattr__(self, "pmf", pmf)

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.pmf.shape

    def marginal(self, keep) -> np.ndarray:
        return marginal(self, keep)


def build_joint(alphabets: Sequence, weights) -> JointDistribution:
    """Normalize a nonnegative weight table into a JointDistribution.

    ``alphabets`` is the (Y, B, A) triple of Alphabets (or raw label lists).
    """
    if len(alphabets) != 3:
        raise ValueError("expected exactly three alphabets (Y, B, A)")
    ay, ab, aa = (_as_alphabet(x) for x in alphabets)
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (len(ay), len(ab), len(aa)):
        raise ValueError(f"weight shape {w.shape} does not match alphabets")
    if not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite")
    if w.min(initial=0.0) < 0.0:
        raise ValueError("weights must be nonnegative")
    total = float(w.sum())
    if total <= 0.0:
        raise ValueError("weights must contain at least one positive entry")
    return JointDistribution(ay, ab, aa, w / total)


def _parse_axes(keep) -> tuple[int, ...]:
    if isinstance(keep, str):
        names = list(keep.lower())
    else:
        names = [str(v).lower() for v in keep]
    if not names:
        raise ValueError("variable subset must be nonempty")
    axes = []
    for name in names:
        if name not in _AXIS_NAMES:
            raise ValueError(f"unknown variable {name!r}; expected members of {_AXIS_NAMES}")
        axes.append(_AXIS_NAMES.index(name))
    if len(set(axes)) != len(axes):
        raise ValueError(f"repeated variable in subset {keep!r}")
    return tuple(sorted(axes))


def marginal(dist: JointDistribution, keep) -> np.ndarray:
    """Marginal table over ``keep`` (subset of "yba"), axes in (Y, B, A) order."""
    axes = _parse_axes(keep)
    drop = tuple(i for i in range(3) if i not in axes)
    return dist.pmf.sum(axis=drop) if drop else dist.pmf.copy()


def bin_quantile(values, k: int) -> np.ndarray:
    """Assign each value to one of k quantile bins (0..k-1).

    Boundaries sit at positions ceil(n*j/k) of the stable ascending sort; a run
    of equal values is never split across a boundary (the boundary advances
    past the run, which can leave a later bin empty in heavily tied data).
    """
    vals = np.asarray(list(values), dtype=np.float64)
    if vals.size == 0:
        raise ValueError("values must be nonempty")
    if not np.all(np.isfinite(vals)):
        raise ValueError("values must be finite")
    if k < 2:
        raise ValueError("k must be at least 2")
    n_distinct = np.unique(vals).size
    if k > n_distinct:
        raise ValueError(f"cannot form {k} quantile bins from {n_distinct} distinct values")
    n = vals.size
    order = np.argsort(vals, kind="stable")
    sorted_vals = vals[order]
    bins_sorted = np.empty(n, dtype=np.int64)
    start = 0
    for j in range(k):
        stop = n if j == k - 1 else math.ceil(n * (j + 1) / k)
        stop = max(stop, start)
        while 0 < stop < n and sorted_vals[stop - 1] == sorted_vals[stop]:
            stop += 1
        bins_sorted[start:stop] = j
        start = stop
    out = np.empty(n, dtype=np.int64)
    out[order] = bins_sorted
    return out


@dataclass(frozen=True)
class CountRange:
    """Inclusive spike-count range; ``hi`` of None means unbounded above."""

    lo: int
    hi: int | None

    def __post_init__(self):
        if self.lo < 0:
            raise ValueError("count range lower bound must be >= 0")
        if self.hi is not None and self.hi < self.lo:
            raise ValueError(f"empty count range {self.lo}-{self.hi}")

    def contains(self, count: int) -> bool:
        return count >= self.lo and (self.hi is None or count <= self.hi)

    @property
    def label(self) -> str:
        if self.hi is None:
            return f"{self.lo}+"
        if self.hi == self.lo:
            return str(self.lo)
        return f"{self.lo}-{self.hi}"

    @staticmethod
    def parse(token: str) -> "CountRange":
        token = token.strip()
        if not token:
            raise ValueError("empty output-category token")
        if token.endswith("+"):
            return CountRange(int(token[:-1]), None)
        if "-" in token:
            lo, hi = token.split("-", 1)
            return CountRange(int(lo), int(hi))
        v = int(token)
        return CountRange(v, v)


def parse_output_categories(text: str) -> tuple[CountRange, ...]:
    """Parse a category list like "0,1,2+" or "0,1-2,3-4"."""
    return tuple(CountRange.parse(tok) for tok in text.split(","))


@dataclass(frozen=True)
class BinningConfig:
    """Input-bin count plus ordered, disjoint output count categories."""

    output_categories: tuple[CountRange, ...]
    n_input_bins: int = 4

    def __post_init__(self):
        cats = tuple(self.output_categories)
        object.__setattr__(self, "output_categories", cats)
        if len(cats) < 2:
            raise ValueError("need at least two output categories")
        if self.n_input_bins < 2:
            raise ValueError("need at least two input bins")
        for prev, cur in zip(cats, cats[1:]):
            if prev.hi is None:
                raise ValueError("only the last output category may be open-ended")
            if cur.lo <= prev.hi:
                raise ValueError(
                    f"output categories must be ascending and disjoint "
                    f"({prev.label} overlaps {cur.label})"
                )

    @property
    def category_labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.output_categories)


def categorize_output(count: int, cfg: BinningConfig) -> int:
    """Index of the unique output category containing ``count``."""
    if count < 0:
        raise ValueError("spike count must be nonnegative")
    for idx, rng in enumerate(cfg.output_categories):
        if rng.contains(count):
            return idx
    raise ValueError(
        f"spike count {count} falls outside the configured output categories "
        f"{','.join(cfg.category_labels)}"
    )


@dataclass(frozen=True)
class TrialRecord:
    """One 120 ms bin of one stimulus presentation for one unit."""

    unit_id: str
    condition: str
    bin_index: int
    mean_basal: float
    mean_apical: float
    spike_count: int

    def __post_init__(self):
        if self.condition not in CONDITIONS:
            raise ValueError(f"condition must be one of {CONDITIONS}, got {self.condition!r}")
        if self.spike_count < 0:
            raise ValueError("spike_count must be >= 0")
        if not (math.isfinite(self.mean_basal) and math.isfinite(self.mean_apical)):
            raise ValueError("mean currents must be finite")


@dataclass(frozen=True)
class GridRecord:
    """Spike count for one (basal, apical) synapse-count stimulus cell."""

    n_basal: int
    n_apical: int
    spike_count: int

    def __post_init__(self):
        if self.n_basal < 0 or self.n_apical < 0:
            raise ValueError("synapse counts must be >= 0")
        if self.spike_count < 0:
            raise ValueError("spike_count must be >= 0")


def ingest_trials(records: Iterable[TrialRecord], cfg: BinningConfig) -> JointDistribution:
    """Build the |categories| x bins x bins distribution for one unit+condition.

    Basal and apical means are quantile-binned independently across the given
    records; every record carries equal weight.
    """
    recs = list(records)
    if not recs:
        raise ValueError("no trial records to ingest")
    k = cfg.n_input_bins
    b_bins = bin_quantile([r.mean_basal for r in recs], k)
    a_bins = bin_quantile([r.mean_apical for r in recs], k)
    weights = np.zeros((len(cfg.output_categories), k, k))
    for rec, bi, ai in zip(recs, b_bins, a_bins):
        weights[categorize_output(rec.spike_count, cfg), bi, ai] += 1.0
    alphabets = (
        Alphabet(cfg.category_labels),
        Alphabet(tuple(range(k))),
        Alphabet(tuple(range(k))),
    )
    return build_joint(alphabets, weights)


def _axis_step(values: Sequence[int]) -> int:
    distinct = sorted(set(values))
    if len(distinct) < 2:
        return 0
    step = 0
    for lo, hi in zip(distinct, distinct[1:]):
        step = math.gcd(step, hi - lo)
    return step


def _check_range_alignment(name: str, values: Sequence[int], rng: tuple[int, int]) -> None:
    lo, hi = rng
    if lo > hi:
        raise ValueError(f"{name} range {lo}-{hi} is empty")
    step = _axis_step(values)
    if step == 0:
        return
    origin = min(values)
    if (lo - origin) % step or (hi - origin) % step:
        raise ValueError(f"{name} range {lo}-{hi} is not aligned to the grid step {step}")


def ingest_grid(
    records: Iterable[GridRecord],
    cfg: BinningConfig,
    basal_range: tuple[int, int],
    apical_range: tuple[int, int],
) -> JointDistribution:
    """Equal-probability distribution over the grid cells inside both ranges.

    Input levels are kept as-is (no re-binning); the B and A alphabets are the
    distinct levels observed inside the ranges; each kept cell gets probability
    1/(number of kept cells).
    """
    recs = list(records)
    if not recs:
        raise ValueError("no grid records to ingest")
    _check_range_alignment("basal", [r.n_basal for r in recs], basal_range)
    _check_range_alignment("apical", [r.n_apical for r in recs], apical_range)
    kept = [
        r
        for r in recs
        if basal_range[0] <= r.n_basal <= basal_range[1]
        and apical_range[0] <= r.n_apical <= apical_range[1]
    ]
    if not kept:
        raise ValueError(
            f"no grid cells inside basal {basal_range[0]}-{basal_range[1]} x "
            f"apical {apical_range[0]}-{apical_range[1]}"
        )
    seen = set()
    for r in kept:
        cell = (r.n_basal, r.n_apical)
        if cell in seen:
            raise ValueError(f"duplicate grid cell {cell}")
        seen.add(cell)
    b_labels = tuple(sorted({r.n_basal for r in kept}))
    a_labels = tuple(sorted({r.n_apical for r in kept}))
    alphabets = (Alphabet(cfg.category_labels), Alphabet(b_labels), Alphabet(a_labels))
    weights = np.zeros((len(cfg.output_categories), len(b_labels), len(a_labels)))
    b_index = {v: i for i, v in enumerate(b_labels)}
    a_index = {v: i for i, v in enumerate(a_labels)}
    for r in kept:
        y = categorize_output(r.spike_count, cfg)
        weights[y, b_index[r.n_basal], a_index[r.n_apical]] += 1.0
    return build_joint(alphabets, weights)


def match_support(
    control_records: Iterable[TrialRecord],
    treatment_records: Iterable[TrialRecord],
) -> tuple[list[TrialRecord], list[TrialRecord]]:
    """Restrict both conditions to stimulus combinations present in both.

    Combinations are identified by the raw (mean_basal, mean_apical) pair,
    before any binning.
    """
    control = list(control_records)
    treatment = list(treatment_records)
    if not control or not treatment:
        raise ValueError("both conditions need at least one record")
    combos = {(r.mean_basal, r.mean_apical) for r in control} & {
        (r.mean_basal, r.mean_apical) for r in treatment
    }
    if not combos:
        raise ValueError("conditions share no stimulus combinations")
    return (
        [r for r in control if (r.mean_basal, r.mean_apical) in combos],
        [r for r in treatment if (r.mean_basal, r.mean_apical) in combos],
    )


def _read_csv(path, header: tuple[str, ...]):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        got = next(reader, None)
        if got != list(header):
            raise ValueError(f"{path}: expected header {','.join(header)}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ValueError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
            yield lineno, row


def read_trials_csv(path) -> list[TrialRecord]:
    records = []
    for lineno, row in _read_csv(path, TRIALS_HEADER):
        try:
            records.append(
                TrialRecord(
                    unit_id=row[0],
                    condition=row[1],
                    bin_index=int(row[2]),
                    mean_basal=float(row[3]),
                    mean_apical=float(row[4]),
                    spike_count=int(row[5]),
                )
            )
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return records


def read_grid_csv(path) -> list[GridRecord]:
    records = []
    for lineno, row in _read_csv(path, GRID_HEADER):
        try:
            records.append(
                GridRecord(n_basal=int(row[0]), n_apical=int(row[1]), spike_count=int(row[2]))
            )
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return records
