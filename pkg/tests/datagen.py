"""Deterministic synthetic datasets for the test suite.

Two generators:

- ``synthetic_trials``: a 15-unit, two-condition trial corpus with injected
  basal-dominant structure. Spike counts follow a Poisson drive whose rate is
  dominated by the basal input; the apical input only modulates
  multiplicatively, more strongly under the treatment condition. The
  generator asserts that every unit/condition distribution has I(Y;B) >
  I(Y;A) (positive unique-information asymmetry), so the frozen seed is
  self-validating.

- ``synthetic_grid``: a deterministic spike-count surface over a synapse
  count grid with the qualitative structure the grid analyses look for: no
  output without sufficient basal drive (apical alone never fires), strong
  basal drive fires on its own, and apical input amplifies intermediate
  basal drive.
"""

from __future__ import annotations

import csv

import numpy as np

from pidcmp import (
    BinningConfig,
    GridRecord,
    TrialRecord,
    ingest_trials,
    parse_output_categories,
    summarize,
)

TRIALS_SEED = 20259
N_UNITS = 15

# Raw stimulus combinations shared by both conditions within each unit.
_BASAL_LEVELS = (0.20, 0.45, 0.70, 0.95)
_APICAL_LEVELS = (0.10, 0.35, 0.60, 0.85)
_REPEATS = 12


def unit_ids() -> list[str]:
    return [f"u{i:02d}" for i in range(1, N_UNITS + 1)]


def synthetic_trials(seed: int = TRIALS_SEED) -> list[TrialRecord]:
    """15-unit two-condition corpus; every unit/condition has positive UIA."""
    rng = np.random.default_rng(seed)
    records: list[TrialRecord] = []
    for u, unit in enumerate(unit_ids()):
        basal_gain = 3.0 + 0.08 * u
        for condition, apical_gain in (("control", 0.45), ("treatment", 1.40)):
            bin_index = 0
            for mb in _BASAL_LEVELS:
                for ma in _APICAL_LEVELS:
                    for _ in range(_REPEATS):
                        rate = 0.25 + basal_gain * mb * (1.0 + apical_gain * ma)
                        records.append(
                            TrialRecord(
                                unit_id=unit,
                                condition=condition,
                                bin_index=bin_index,
                                mean_basal=mb,
                                mean_apical=ma,
                                spike_count=int(rng.poisson(rate)),
                            )
                        )
                        bin_index += 1
    _check_basal_dominance(records)
    return records


def _check_basal_dominance(records: list[TrialRecord]) -> None:
    cfg = BinningConfig(output_categories=parse_output_categories("0,1,2+"), n_input_bins=4)
    for unit in unit_ids():
        for condition in ("control", "treatment"):
            recs = [r for r in records if r.unit_id == unit and r.condition == condition]
            s = summarize(ingest_trials(recs, cfg))
            if s.mi_yb - s.mi_ya <= 0.0:
                raise AssertionError(
                    f"generator lost basal dominance for {unit}/{condition}: "
                    f"I(Y;B)={s.mi_yb:.4f} I(Y;A)={s.mi_ya:.4f}"
                )


def grid_spike_count(n_basal: int, n_apical: int) -> int:
    """Deterministic spike-count surface with drive/amplification structure.

    - below 50 basal synapses the cell never fires (apical alone is silent);
    - from 150 basal synapses the cell fires strongly on its own;
    - in between, output grows mainly when apical input is present.
    """
    if n_basal < 50:
        return 0
    if n_basal >= 150:
        return 3 + (1 if n_apical >= 120 else 0)
    weak = 1 if n_basal >= 100 else 0
    amplified = 0
    if n_apical >= 60:
        amplified = 1 + (1 if n_apical >= 140 else 0)
    return weak + amplified


def synthetic_grid(
    basal_stop: int = 200, apical_stop: int = 200, step: int = 10
) -> list[GridRecord]:
    return [
        GridRecord(n_basal=nb, n_apical=na, spike_count=grid_spike_count(nb, na))
        for nb in range(0, basal_stop + 1, step)
        for na in range(0, apical_stop + 1, step)
    ]


def write_trials_csv(path, records: list[TrialRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["unit_id", "condition", "bin_index", "mean_basal", "mean_apical", "spike_count"]
        )
        for r in records:
            writer.writerow(
                [r.unit_id, r.condition, r.bin_index, r.mean_basal, r.mean_apical, r.spike_count]
            )


def write_grid_csv(path, records: list[GridRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n_basal", "n_apical", "spike_count"])
        for r in records:
            writer.writerow([r.n_basal, r.n_apical, r.spike_count])
