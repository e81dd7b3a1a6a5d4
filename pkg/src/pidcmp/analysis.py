"""Batch analyses and deterministic report emission.

Three entry points mirror the three CLI subcommands: condition comparison over
trial data, range sweeps over grid data with a sign-change scan of the unique
information asymmetry, and classification of cooperative context-sensitivity
properties. Reports are plain dicts of native Python types; emit_report writes
them as canonical JSON plus long-format CSV tables.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .components import COMPONENT_NAMES, METHODS, normalize_components
from .distributions import (
    CONDITIONS,
    BinningConfig,
    CountRange,
    ingest_grid,
    ingest_trials,
    match_support,
    read_grid_csv,
    read_trials_csv,
)
from .exceptions import ConvergenceError
from .measures import normalize_summary, summarize
from .methods import decompose
from .stats import bonferroni, median_quartiles, wilcoxon_exact

__all__ = [
    "ConditionsConfig",
    "SweepSpec",
    "CcsThresholds",
    "CcsVerdict",
    "parse_range",
    "parse_ranges",
    "range_label",
    "run_conditions",
    "run_sweep",
    "classify_ccs",
    "run_ccs",
    "emit_report",
]

_LEDGER_METHODS = ("iccs", "ipm", "isx")

_CONVENTIONS = {
    "normalized_values": "fractions of the joint mutual information",
    "differences": "treatment minus control",
    "wilcoxon": "exact two-sided; zero differences dropped before ranking; mid-ranks for ties",
    "quartiles": "linear interpolation of order statistics at 0.25, 0.5, 0.75",
}


def parse_range(text: str) -> tuple[int, int]:
    """Parse an inclusive integer range like "0-100" or "110-150"."""
    lo, sep, hi = text.strip().partition("-")
    if not sep or not lo or not hi:
        raise ValueError(f"range must look like LO-HI, got {text!r}")
    rng = (int(lo), int(hi))
    if rng[0] > rng[1]:
        raise ValueError(f"range {text!r} is empty")
    return rng


def parse_ranges(text: str) -> tuple[tuple[int, int], ...]:
    """Parse a comma-separated range list like "0-100,0-110"."""
    return tuple(parse_range(tok) for tok in text.split(","))


def range_label(rng: tuple[int, int]) -> str:
    return f"{rng[0]}-{rng[1]}"


def _check_methods(methods) -> tuple[str, ...]:
    methods = tuple(methods)
    if not methods:
        raise ValueError("need at least one method")
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}; expected one of {METHODS}")
    if len(set(methods)) != len(methods):
        raise ValueError("duplicate method")
    return methods


@dataclass(frozen=True)
class ConditionsConfig:
    """Settings for the trial-data condition comparison."""

    output_categories: tuple[CountRange, ...]
    n_input_bins: int = 4
    methods: tuple[str, ...] = METHODS
    drop_silent_trials: bool = False
    difference_test_family: int = 1

    def __post_init__(self):
        object.__setattr__(self, "methods", _check_methods(self.methods))
        if int(self.difference_test_family) != self.difference_test_family or self.difference_test_family < 1:
            raise ValueError("difference_test_family must be a positive integer")
        self.binning()

    def binning(self) -> BinningConfig:
        return BinningConfig(tuple(self.output_categories), self.n_input_bins)


@dataclass(frozen=True)
class SweepSpec:
    """Range grid, output categories, and methods for one sweep."""

    basal_ranges: tuple[tuple[int, int], ...]
    apical_ranges: tuple[tuple[int, int], ...]
    output_categories: tuple[CountRange, ...]
    methods: tuple[str, ...] = METHODS
    normalized: bool = True

    def __post_init__(self):
        for name in ("basal_ranges", "apical_ranges"):
            ranges = tuple(tuple(r) for r in getattr(self, name))
            if not ranges:
                raise ValueError(f"{name} must be nonempty")
            for lo, hi in ranges:
                if lo > hi:
                    raise ValueError(f"{name} entry {lo}-{hi} is empty")
            object.__setattr__(self, name, ranges)
        object.__setattr__(self, "methods", _check_methods(self.methods))
        self.binning()

    def binning(self) -> BinningConfig:
        return BinningConfig(tuple(self.output_categories))


@dataclass(frozen=True)
class CcsThresholds:
    """Cutoffs, as fractions of the joint mutual information."""

    unq_b_min: float = 0.20
    unq_a_abs_max: float = 0.05
    strength_min: float = 0.10

    def __post_init__(self):
        for name in ("unq_b_min", "unq_a_abs_max", "strength_min"):
            v = float(getattr(self, name))
            if not np.isfinite(v) or v < 0.0:
                raise ValueError(f"{name} must be finite and >= 0")
            object.__setattr__(self, name, v)

    def as_dict(self) -> dict[str, float]:
        return {
            "unq_b_min": self.unq_b_min,
            "unq_a_abs_max": self.unq_a_abs_max,
            "strength_min": self.strength_min,
        }


@dataclass(frozen=True)
class CcsVerdict:
    """Property flags for one range cell under one method.

    Flags are True/False, or None where the data cannot decide (for example
    no zero-input rows, or too few computed cells along the basal series).
    Every flag is re-derivable from ``support`` plus ``thresholds``.
    """

    basal_range: str
    apical_range: str
    method: str
    ccs1: bool | None
    ccs2: bool | None
    ccs3: bool | None
    ccs4: bool | None
    support: dict
    thresholds: CcsThresholds

    def as_dict(self) -> dict:
        return {
            "basal_range": self.basal_range,
            "apical_range": self.apical_range,
            "method": self.method,
            "ccs1": self.ccs1,
            "ccs2": self.ccs2,
            "ccs3": self.ccs3,
            "ccs4": self.ccs4,
            "support": self.support,
        }


def _safe_name(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]", "-", text)


def _q3(values) -> dict[str, float]:
    q_lower, median, q_upper = median_quartiles(values)
    return {"q_lower": q_lower, "median": median, "q_upper": q_upper}


def _test_entry(values, family: int) -> dict:
    n = sum(1 for v in values if v != 0.0)
    try:
        p = wilcoxon_exact(values)
    except ValueError as exc:
        note = "no test possible" if n == 0 else str(exc)
        return {"n": n, "note": note}
    return {"n": n, "p": p, "family_size": family, "p_corrected": bonferroni(p, family)}


def _pid_block(dist, summary, methods, normalized, collector, prefix):
    """Run the requested methods on one distribution.

    Returns (per-method component dict, max deviation in bits of any method's
    unq_b - unq_a from I(Y;B) - I(Y;A)). Pointwise ledgers are stored in
    ``collector`` under ``prefix_method`` when a collector is given.
    """
    uia_bits = summary.mi_yb - summary.mi_ya
    pid = {}
    max_dev = 0.0
    for m in methods:
        want = collector is not None and m in _LEDGER_METHODS
        comps, led = decompose(dist, m, ledger=want)
        max_dev = max(max_dev, abs((comps.unq_b - comps.unq_a) - uia_bits))
        if normalized:
            comps = normalize_components(comps, summary.jmi)
        pid[m] = {k: float(getattr(comps, k)) for k in COMPONENT_NAMES}
        if want and led is not None:
            collector[f"{prefix}_{m}"] = led
    return pid, float(max_dev)


def _drop_silent_combos(records):
    """Drop every record of a stimulus combination that never spiked."""
    total: dict[tuple[float, float], int] = {}
    for r in records:
        key = (r.mean_basal, r.mean_apical)
        total[key] = total.get(key, 0) + r.spike_count
    return [r for r in records if total[(r.mean_basal, r.mean_apical)] > 0]


def _condition_block(records, binning, methods, collector, prefix):
    dist = ingest_trials(records, binning)
    summary = summarize(dist)
    if summary.jmi <= 0.0:
        raise ValueError("joint mutual information is zero; cannot normalize")
    pid, dev = _pid_block(dist, summary, methods, True, collector, prefix)
    uia_bits = summary.mi_yb - summary.mi_ya
    return {
        "n_records": len(records),
        "shape": [int(s) for s in dist.shape],
        "summary_bits": summary.as_dict(),
        "summary_normalized": normalize_summary(summary).as_dict(),
        "pid": pid,
        "uia_bits": float(uia_bits),
        "uia": float(uia_bits / summary.jmi),
        "uia_method_max_dev_bits": dev,
    }


def run_conditions(trials, cfg: ConditionsConfig, ledgers: dict | None = None) -> dict:
    """Compare the two conditions unit by unit over trial data.

    ``trials`` is a CSV path or a list of TrialRecord. Units missing a
    condition, failing support matching, or yielding a degenerate distribution
    are skipped with a warning. Pass a dict as ``ledgers`` to collect
    pointwise ledgers keyed ``unit_condition_method``.
    """
    records = read_trials_csv(trials) if isinstance(trials, (str, Path)) else list(trials)
    if not records:
        raise ValueError("no trial records")
    by_unit: dict[str, dict[str, list]] = {}
    for r in records:
        by_unit.setdefault(r.unit_id, {}).setdefault(r.condition, []).append(r)

    binning = cfg.binning()
    warnings: list[str] = []
    units_out = []
    comp_values = {
        m: {c: {"control": [], "treatment": [], "difference": []} for c in COMPONENT_NAMES}
        for m in cfg.methods
    }
    uia_values = {"control": [], "treatment": [], "difference": []}

    for uid in sorted(by_unit):
        conds = by_unit[uid]
        missing = [c for c in CONDITIONS if c not in conds]
        if missing:
            warnings.append(f"unit {uid}: missing condition {', '.join(missing)}; skipped")
            continue
        ctl, trt = conds["control"], conds["treatment"]
        if cfg.drop_silent_trials:
            ctl, trt = _drop_silent_combos(ctl), _drop_silent_combos(trt)
            if not ctl or not trt:
                warnings.append(f"unit {uid}: no spiking stimulus combination in one condition; skipped")
                continue
        try:
            ctl, trt = match_support(ctl, trt)
        except ValueError as exc:
            warnings.append(f"unit {uid}: {exc}; skipped")
            continue
        unit_ledgers: dict | None = {} if ledgers is not None else None
        try:
            blocks = {
                cond: _condition_block(recs, binning, cfg.methods, unit_ledgers, f"{_safe_name(uid)}_{cond}")
                for cond, recs in (("control", ctl), ("treatment", trt))
            }
        except (ValueError, ConvergenceError) as exc:
            warnings.append(f"unit {uid}: {exc}; skipped")
            continue
        if ledgers is not None:
            ledgers.update(unit_ledgers)
        differences = {
            m: {
                c: blocks["treatment"]["pid"][m][c] - blocks["control"]["pid"][m][c]
                for c in COMPONENT_NAMES
            }
            for m in cfg.methods
        }
        uia_diff = blocks["treatment"]["uia"] - blocks["control"]["uia"]
        units_out.append(
            {
                "unit": uid,
                "control": blocks["control"],
                "treatment": blocks["treatment"],
                "differences": differences,
                "uia_difference": float(uia_diff),
            }
        )
        for m in cfg.methods:
            for c in COMPONENT_NAMES:
                comp_values[m][c]["control"].append(blocks["control"]["pid"][m][c])
                comp_values[m][c]["treatment"].append(blocks["treatment"]["pid"][m][c])
                comp_values[m][c]["difference"].append(differences[m][c])
        uia_values["control"].append(blocks["control"]["uia"])
        uia_values["treatment"].append(blocks["treatment"]["uia"])
        uia_values["difference"].append(uia_diff)

    if not units_out:
        raise ValueError("no unit provided both conditions with analyzable data")

    samples = {
        "components": {
            m: {c: {k: _q3(v) for k, v in comp_values[m][c].items()} for c in COMPONENT_NAMES}
            for m in cfg.methods
        },
        "uia": {k: _q3(v) for k, v in uia_values.items()},
    }
    fam = int(cfg.difference_test_family)
    tests = {
        "differences": {
            m: {c: _test_entry(comp_values[m][c]["difference"], fam) for c in COMPONENT_NAMES}
            for m in cfg.methods
        },
        "uia": {k: _test_entry(uia_values[k], 3) for k in ("control", "treatment", "difference")},
    }
    return {
        "kind": "conditions",
        "config": {
            "output_categories": list(binning.category_labels),
            "n_input_bins": int(cfg.n_input_bins),
            "methods": list(cfg.methods),
            "drop_silent_trials": bool(cfg.drop_silent_trials),
            "difference_test_family": fam,
        },
        "conventions": dict(_CONVENTIONS),
        "n_units": len(units_out),
        "units": units_out,
        "samples": samples,
        "tests": tests,
        "warnings": warnings,
    }


def _sign(x: float) -> int:
    return (x > 0.0) - (x < 0.0)


def _sweep_cells(records, spec: SweepSpec, ledgers: dict | None, warnings: list[str]):
    """Yield (basal label, apical label, cell dict) for every computable cell."""
    binning = spec.binning()
    for b_rng in spec.basal_ranges:
        for a_rng in spec.apical_ranges:
            lb, la = range_label(b_rng), range_label(a_rng)
            try:
                dist = ingest_grid(records, binning, b_rng, a_rng)
                summary = summarize(dist)
                if summary.jmi <= 0.0:
                    raise ValueError("joint mutual information is zero")
                pid, dev = _pid_block(
                    dist, summary, spec.methods, spec.normalized, ledgers, f"b{lb}_a{la}"
                )
            except (ValueError, ConvergenceError) as exc:
                warnings.append(f"cell basal {lb} x apical {la}: {exc}; skipped")
                continue
            uia_bits = summary.mi_yb - summary.mi_ya
            yield lb, la, {
                "basal_range": lb,
                "apical_range": la,
                "n_points": int(np.count_nonzero(dist.pmf)),
                "shape": [int(s) for s in dist.shape],
                "summary_bits": summary.as_dict(),
                "summary_normalized": normalize_summary(summary).as_dict(),
                "pid": pid,
                "uia_bits": float(uia_bits),
                "uia": float(uia_bits / summary.jmi),
                "uia_method_max_dev_bits": dev,
            }


def run_sweep(grid, spec: SweepSpec, ledgers: dict | None = None) -> dict:
    """Decompose every basal x apical range cell and scan for sign changes.

    ``grid`` is a CSV path or a list of GridRecord. The sign-change table
    follows the basal ranges in the order given (pass them in increasing
    width); one entry per apical range lists transitions of the sign of
    I(Y;B) - I(Y;A) between consecutive computable basal cells.
    """
    records = read_grid_csv(grid) if isinstance(grid, (str, Path)) else list(grid)
    if not records:
        raise ValueError("no grid records")
    warnings: list[str] = []
    cells = []
    by_apical: dict[str, list[tuple[str, float]]] = {range_label(a): [] for a in spec.apical_ranges}
    for lb, la, cell in _sweep_cells(records, spec, ledgers, warnings):
        cells.append(cell)
        by_apical[la].append((lb, cell["uia_bits"]))
    if not cells:
        raise ValueError("no computable sweep cell")

    bifurcation = []
    for a_rng in spec.apical_ranges:
        la = range_label(a_rng)
        series = by_apical[la]
        changes = []
        for (prev_b, prev_u), (next_b, next_u) in zip(series, series[1:]):
            s0, s1 = _sign(prev_u), _sign(next_u)
            if s0 != s1:
                changes.append(
                    {"from_basal": prev_b, "to_basal": next_b, "from_sign": s0, "to_sign": s1}
                )
        bifurcation.append({"apical_range": la, "sign_changes": changes})

    return {
        "kind": "sweep",
        "config": {
            "basal_ranges": [range_label(r) for r in spec.basal_ranges],
            "apical_ranges": [range_label(r) for r in spec.apical_ranges],
            "output_categories": list(spec.binning().category_labels),
            "methods": list(spec.methods),
            "normalized": bool(spec.normalized),
        },
        "conventions": dict(_CONVENTIONS),
        "n_cells": len(cells),
        "cells": cells,
        "bifurcation": bifurcation,
        "warnings": warnings,
    }


def classify_ccs(
    grid,
    spec: SweepSpec,
    thresholds: CcsThresholds | None = None,
    warnings: list[str] | None = None,
    ledgers: dict | None = None,
) -> list[CcsVerdict]:
    """Assess the four context-sensitivity properties per cell per method.

    Property 1 (drive sufficient, context unnecessary): some zero-apical row
    spikes. Property 2 (drive necessary, context insufficient): every
    zero-basal row is silent. Property 3: per cell, unq_b large, |unq_a|
    small, and shared or synergistic structure present, all as fractions of
    the joint mutual information. Property 4: along the basal series of the
    cell's apical range, shd + syn rises to an interior peak then falls.
    """
    if thresholds is None:
        thresholds = CcsThresholds()
    if not spec.normalized:
        raise ValueError("thresholds are fractions of the joint mutual information; use a normalized spec")
    records = read_grid_csv(grid) if isinstance(grid, (str, Path)) else list(grid)
    if not records:
        raise ValueError("no grid records")
    if warnings is None:
        warnings = []

    zero_apical = [r for r in records if r.n_apical == 0]
    zero_basal = [r for r in records if r.n_basal == 0]
    ccs1 = any(r.spike_count > 0 for r in zero_apical) if zero_apical else None
    ccs2 = all(r.spike_count == 0 for r in zero_basal) if zero_basal else None
    ccs1_support = {
        "n_zero_apical_rows": len(zero_apical),
        "n_spiking_zero_apical_rows": sum(1 for r in zero_apical if r.spike_count > 0),
    }
    ccs2_support = {
        "n_zero_basal_rows": len(zero_basal),
        "max_spike_count_zero_basal": max((r.spike_count for r in zero_basal), default=None),
    }

    computed = []
    for lb, la, cell in _sweep_cells(records, spec, ledgers, warnings):
        computed.append((lb, la, cell))

    series: dict[tuple[str, str], list[dict]] = {}
    for lb, la, cell in computed:
        for m in spec.methods:
            strength = cell["pid"][m]["shd"] + cell["pid"][m]["syn"]
            series.setdefault((la, m), []).append({"basal_range": lb, "value": float(strength)})

    def _ccs4(entries) -> tuple[bool | None, str | None]:
        if len(entries) < 3:
            return None, None
        values = [e["value"] for e in entries]
        peak = int(np.argmax(values))
        holds = 0 < peak < len(values) - 1 and values[peak] > values[0] and values[peak] > values[-1]
        return bool(holds), entries[peak]["basal_range"]

    verdicts = []
    for lb, la, cell in computed:
        for m in spec.methods:
            comps = cell["pid"][m]
            ccs3 = (
                comps["unq_b"] >= thresholds.unq_b_min
                and abs(comps["unq_a"]) <= thresholds.unq_a_abs_max
                and (comps["syn"] >= thresholds.strength_min or comps["shd"] >= thresholds.strength_min)
            )
            entries = series[(la, m)]
            holds4, peak_b = _ccs4(entries)
            support = {
                "components": dict(comps),
                "jmi_bits": cell["summary_bits"]["jmi"],
                "n_points": cell["n_points"],
                "ccs1": dict(ccs1_support),
                "ccs2": dict(ccs2_support),
                "ccs4": {"series": [dict(e) for e in entries], "peak_basal_range": peak_b},
            }
            verdicts.append(
                CcsVerdict(
                    basal_range=lb,
                    apical_range=la,
                    method=m,
                    ccs1=ccs1,
                    ccs2=ccs2,
                    ccs3=bool(ccs3),
                    ccs4=holds4,
                    support=support,
                    thresholds=thresholds,
                )
            )
    if not verdicts:
        raise ValueError("no computable cell to classify")
    return verdicts


def run_ccs(
    grid,
    spec: SweepSpec,
    thresholds: CcsThresholds | None = None,
    ledgers: dict | None = None,
) -> dict:
    """classify_ccs wrapped into a report dict."""
    if thresholds is None:
        thresholds = CcsThresholds()
    warnings: list[str] = []
    verdicts = classify_ccs(grid, spec, thresholds, warnings, ledgers)
    first = verdicts[0]
    return {
        "kind": "ccs",
        "config": {
            "basal_ranges": [range_label(r) for r in spec.basal_ranges],
            "apical_ranges": [range_label(r) for r in spec.apical_ranges],
            "output_categories": list(spec.binning().category_labels),
            "methods": list(spec.methods),
            "normalized": True,
        },
        "conventions": dict(_CONVENTIONS),
        "thresholds": thresholds.as_dict(),
        "data_checks": {
            "ccs1": {"holds": first.ccs1, **first.support["ccs1"]},
            "ccs2": {"holds": first.ccs2, **first.support["ccs2"]},
        },
        "cells": [v.as_dict() for v in verdicts],
        "warnings": warnings,
    }


def _csv_cell(value) -> str:
    if value is None:
        return "indeterminate"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(v) for v in row])


def _conditions_tables(report) -> dict[str, tuple[tuple, list]]:
    comp_rows = []
    uia_rows = []
    for unit in report["units"]:
        uid = unit["unit"]
        for cond in CONDITIONS:
            for m, comps in unit[cond]["pid"].items():
                comp_rows.extend((uid, cond, m, c, comps[c]) for c in COMPONENT_NAMES)
            uia_rows.append((uid, cond, unit[cond]["uia"]))
        for m, comps in unit["differences"].items():
            comp_rows.extend((uid, "difference", m, c, comps[c]) for c in COMPONENT_NAMES)
        uia_rows.append((uid, "difference", unit["uia_difference"]))
    test_rows = []
    for m, per_comp in report["tests"]["differences"].items():
        for c, entry in per_comp.items():
            test_rows.append(
                ("difference", m, c, entry["n"], entry.get("p"), entry.get("p_corrected"),
                 entry.get("family_size"), entry.get("note", "")))
    for key, entry in report["tests"]["uia"].items():
        test_rows.append(
            ("uia", "", key, entry["n"], entry.get("p"), entry.get("p_corrected"),
             entry.get("family_size"), entry.get("note", "")))
    return {
        "components.csv": (("unit", "condition", "method", "component", "value"), comp_rows),
        "uia.csv": (("unit", "condition", "value"), uia_rows),
        "tests.csv": (("family", "method", "component", "n", "p", "p_corrected", "family_size", "note"), test_rows),
    }


def _sweep_tables(report) -> dict[str, tuple[tuple, list]]:
    cell_rows = []
    comp_rows = []
    for cell in report["cells"]:
        key = (cell["basal_range"], cell["apical_range"])
        s = cell["summary_bits"]
        cell_rows.append(key + (
            cell["n_points"], s["jmi"], s["mi_yb"], s["mi_ya"], s["ii"],
            cell["uia_bits"], cell["uia"], cell["uia_method_max_dev_bits"]))
        for m, comps in cell["pid"].items():
            comp_rows.extend(key + (m, c, comps[c]) for c in COMPONENT_NAMES)
    bif_rows = []
    for entry in report["bifurcation"]:
        for change in entry["sign_changes"]:
            bif_rows.append((entry["apical_range"], change["from_basal"], change["to_basal"],
                             change["from_sign"], change["to_sign"]))
    return {
        "cells.csv": (
            ("basal_range", "apical_range", "n_points", "jmi_bits", "mi_yb_bits",
             "mi_ya_bits", "ii_bits", "uia_bits", "uia_fraction", "uia_method_max_dev_bits"),
            cell_rows,
        ),
        "components.csv": (
            ("basal_range", "apical_range", "method", "component", "value"), comp_rows),
        "bifurcation.csv": (
            ("apical_range", "from_basal", "to_basal", "from_sign", "to_sign"), bif_rows),
    }


def _ccs_tables(report) -> dict[str, tuple[tuple, list]]:
    verdict_rows = []
    comp_rows = []
    for cell in report["cells"]:
        key = (cell["basal_range"], cell["apical_range"], cell["method"])
        verdict_rows.append(key + (cell["ccs1"], cell["ccs2"], cell["ccs3"], cell["ccs4"]))
        comps = cell["support"]["components"]
        comp_rows.extend(key + (c, comps[c]) for c in COMPONENT_NAMES)
    return {
        "verdicts.csv": (
            ("basal_range", "apical_range", "method", "ccs1", "ccs2", "ccs3", "ccs4"),
            verdict_rows,
        ),
        "components.csv": (
            ("basal_range", "apical_range", "method", "component", "value"), comp_rows),
    }


_TABLES = {
    "conditions": _conditions_tables,
    "sweep": _sweep_tables,
    "ccs": _ccs_tables,
}


def emit_report(report: dict, out_dir, formats=("json", "csv"), ledgers: dict | None = None) -> list[Path]:
    """Write a report deterministically; returns the written paths sorted.

    JSON is canonical (sorted keys, two-space indent, full float precision);
    CSVs are long-format at six significant digits. Ledgers, when given, land
    under ``out_dir/ledgers``.
    """
    kind = report.get("kind")
    if kind not in _TABLES:
        raise ValueError(f"unknown report kind {kind!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if "json" in formats:
        path = out / "report.json"
        text = json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"
        path.write_text(text, encoding="utf-8")
        written.append(path)
    if "csv" in formats:
        for name, (header, rows) in _TABLES[kind](report).items():
            path = out / name
            _write_csv(path, header, rows)
            written.append(path)
    if ledgers:
        ledger_dir = out / "ledgers"
        ledger_dir.mkdir(exist_ok=True)
        for name in sorted(ledgers):
            path = ledger_dir / f"{_safe_name(name)}.csv"
            ledgers[name].write_csv(path)
            written.append(path)
    return sorted(written)
