"""Command-line front-end: conditions, sweep, and ccs subcommands.

Flag precedence is command line over config file over built-in defaults; the
config file is a JSON object whose keys mirror the long flag names with
underscores. Exit status: 0 clean, 2 finished with per-unit or per-cell
warnings, 1 fatal.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import (
    CcsThresholds,
    ConditionsConfig,
    SweepSpec,
    emit_report,
    parse_range,
    parse_ranges,
    run_ccs,
    run_conditions,
    run_sweep,
)
from .components import COMPONENT_NAMES, METHODS
from .distributions import parse_output_categories
from .exceptions import ConvergenceError

__all__ = ["main"]

_DEFAULT_TRIAL_OUTPUTS = "0,1,2+"
_DEFAULT_GRID_OUTPUTS = "0,1-2,3-4"


class _CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors routed to exit status 1."""

    def error(self, message):
        raise _CliError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="pidcmp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="{conditions,sweep,ccs}")

    def common(p):
        p.add_argument("--out", help="output directory for the report")
        p.add_argument("--methods", help=f"comma list from {','.join(METHODS)}, or 'all'")
        p.add_argument("--ledger", action="store_const", const=True,
                       help="also write pointwise ledgers (iccs, ipm, isx)")
        p.add_argument("--config", help="JSON config file mirroring the flags")

    p = sub.add_parser("conditions", help="within-unit comparison of two conditions over trial data")
    p.add_argument("--trials", help="trial CSV (unit_id,condition,bin_index,...)")
    p.add_argument("--bins", type=int, help="number of quantile bins per input (default 4)")
    p.add_argument("--outputs", help=f"output count categories (default {_DEFAULT_TRIAL_OUTPUTS})")
    p.add_argument("--drop-silent-trials", action="store_const", const=True,
                   help="drop stimulus combinations that never spiked, per unit and condition")
    p.add_argument("--diff-family", type=int,
                   help="Bonferroni family size declared for the difference tests (default 1)")
    common(p)

    p = sub.add_parser("sweep", help="decompose every basal x apical range cell of grid data")
    p.add_argument("--grid", help="grid CSV (n_basal,n_apical,spike_count)")
    p.add_argument("--basal-ranges", help="comma list of inclusive ranges, e.g. 0-100,0-110")
    p.add_argument("--apical-ranges", help="comma list of inclusive ranges")
    p.add_argument("--outputs", help=f"output count categories (default {_DEFAULT_GRID_OUTPUTS})")
    p.add_argument("--no-normalize", action="store_const", const=True,
                   help="report components in bits instead of fractions of the joint mutual information")
    common(p)

    p = sub.add_parser("ccs", help="classify cooperative context-sensitivity properties per cell")
    p.add_argument("--grid", help="grid CSV (n_basal,n_apical,spike_count)")
    p.add_argument("--spec", help="JSON file with basal_ranges, apical_ranges, outputs, methods, thresholds")
    p.add_argument("--basal-ranges", help="overrides the spec file")
    p.add_argument("--apical-ranges", help="overrides the spec file")
    p.add_argument("--outputs", help="overrides the spec file")
    common(p)

    return parser


def _load_json_object(path, what: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _CliError(f"cannot read {what} {path}: {exc}") from None
    if not isinstance(data, dict):
        raise _CliError(f"{what} {path} must hold a JSON object")
    return data


class _Settings:
    """Flag resolution: command line beats config file beats default."""

    def __init__(self, args, config: dict):
        self._args = args
        self._config = config

    def get(self, key: str, default=None):
        value = getattr(self._args, key, None)
        if value is not None:
            return value
        if key in self._config:
            return self._config[key]
        return default

    def require(self, key: str, flag: str):
        value = self.get(key)
        if value is None:
            raise _CliError(f"{flag} is required (flag or config)")
        return value


def _parse_methods(value) -> tuple[str, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(value)
    if value == "all":
        return METHODS
    return tuple(tok.strip() for tok in str(value).split(","))


def _parse_range_list(value) -> tuple[tuple[int, int], ...]:
    if isinstance(value, str):
        return parse_ranges(value)
    out = []
    for item in value:
        out.append(parse_range(item) if isinstance(item, str) else (int(item[0]), int(item[1])))
    return tuple(out)


def _parse_outputs(value):
    if isinstance(value, (list, tuple)):
        value = ",".join(str(v) for v in value)
    return parse_output_categories(str(value))


def _pct(v: float) -> str:
    return f"{100.0 * v:.1f}"


def _print_conditions(report) -> None:
    print(f"units analyzed: {report['n_units']}")
    print("median component values, percent of joint mutual information")
    print(
        f"{'method':8} {'component':9} {'control':>8} {'treatment':>10} "
        f"{'diff':>8} {'p':>8} {'corrected':>10}"
    )
    for m in report["config"]["methods"]:
        for c in COMPONENT_NAMES:
            med = report["samples"]["components"][m][c]
            test = report["tests"]["differences"][m][c]
            p = f"{test['p']:.4g}" if "p" in test else "-"
            pc = f"{test['p_corrected']:.4g}" if "p_corrected" in test else test.get("note", "-")
            print(f"{m:8} {c:9} {_pct(med['control']['median']):>8} "
                  f"{_pct(med['treatment']['median']):>10} "
                  f"{_pct(med['difference']['median']):>8} {p:>8} {pc:>10}")
    uia = report["samples"]["uia"]
    tests = report["tests"]["uia"]
    for key in ("control", "treatment", "difference"):
        p = tests[key].get("p_corrected")
        shown = f"{p:.4g}" if p is not None else tests[key].get("note", "-")
        print(f"uia {key}: median {_pct(uia[key]['median'])}%, corrected p {shown}")


def _print_sweep(report) -> None:
    print(f"cells computed: {report['n_cells']}")
    for entry in report["bifurcation"]:
        changes = entry["sign_changes"]
        if changes:
            text = "; ".join(
                f"{c['from_basal']} ({c['from_sign']:+d}) -> {c['to_basal']} ({c['to_sign']:+d})"
                for c in changes
            )
        else:
            text = "none"
        print(f"apical {entry['apical_range']}: asymmetry sign changes: {text}")


def _print_ccs(report) -> None:
    print(f"cells classified: {len(report['cells'])}")
    for prop in ("ccs1", "ccs2"):
        check = report["data_checks"][prop]
        holds = {True: "holds", False: "fails", None: "indeterminate"}[check["holds"]]
        print(f"{prop}: {holds}")
    for m in report["config"]["methods"]:
        cells = [c for c in report["cells"] if c["method"] == m]
        n3 = sum(1 for c in cells if c["ccs3"])
        n4 = sum(1 for c in cells if c["ccs4"])
        print(f"{m}: ccs3 true in {n3}/{len(cells)} cells, ccs4 true in {n4}/{len(cells)}")


def _finish(report, out_dir, ledgers) -> int:
    paths = emit_report(report, out_dir, ledgers=ledgers)
    for warning in report["warnings"]:
        print(f"warning: {warning}", file=sys.stderr)
    {"conditions": _print_conditions, "sweep": _print_sweep, "ccs": _print_ccs}[report["kind"]](report)
    print(f"wrote {len(paths)} files to {out_dir}")
    return 2 if report["warnings"] else 0


def _cmd_conditions(settings: _Settings) -> int:
    trials = settings.require("trials", "--trials")
    cfg = ConditionsConfig(
        output_categories=_parse_outputs(settings.get("outputs", _DEFAULT_TRIAL_OUTPUTS)),
        n_input_bins=int(settings.get("bins", 4)),
        methods=_parse_methods(settings.get("methods", "all")),
        drop_silent_trials=bool(settings.get("drop_silent_trials", False)),
        difference_test_family=int(settings.get("diff_family", 1)),
    )
    ledgers = {} if settings.get("ledger", False) else None
    report = run_conditions(trials, cfg, ledgers)
    return _finish(report, settings.require("out", "--out"), ledgers)


def _cmd_sweep(settings: _Settings) -> int:
    grid = settings.require("grid", "--grid")
    spec = SweepSpec(
        basal_ranges=_parse_range_list(settings.require("basal_ranges", "--basal-ranges")),
        apical_ranges=_parse_range_list(settings.require("apical_ranges", "--apical-ranges")),
        output_categories=_parse_outputs(settings.get("outputs", _DEFAULT_GRID_OUTPUTS)),
        methods=_parse_methods(settings.get("methods", "all")),
        normalized=not settings.get("no_normalize", False),
    )
    ledgers = {} if settings.get("ledger", False) else None
    report = run_sweep(grid, spec, ledgers)
    return _finish(report, settings.require("out", "--out"), ledgers)


def _cmd_ccs(settings: _Settings) -> int:
    grid = settings.require("grid", "--grid")
    spec_file = settings.get("spec")
    spec_data = _load_json_object(spec_file, "spec file") if spec_file else {}

    def pick(key, default=None):
        value = settings.get(key)
        if value is not None:
            return value
        if key in spec_data:
            return spec_data[key]
        return default

    basal = pick("basal_ranges")
    apical = pick("apical_ranges")
    if basal is None or apical is None:
        raise _CliError("basal_ranges and apical_ranges are required (flags or spec file)")
    spec = SweepSpec(
        basal_ranges=_parse_range_list(basal),
        apical_ranges=_parse_range_list(apical),
        output_categories=_parse_outputs(pick("outputs", _DEFAULT_GRID_OUTPUTS)),
        methods=_parse_methods(pick("methods", "all")),
        normalized=True,
    )
    raw_thresholds = spec_data.get("thresholds", {})
    if not isinstance(raw_thresholds, dict):
        raise _CliError("spec file thresholds must be a JSON object")
    thresholds = CcsThresholds(**raw_thresholds)
    ledgers = {} if settings.get("ledger", False) else None
    report = run_ccs(grid, spec, thresholds, ledgers)
    return _finish(report, settings.require("out", "--out"), ledgers)


_COMMANDS = {
    "conditions": _cmd_conditions,
    "sweep": _cmd_sweep,
    "ccs": _cmd_ccs,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise _CliError("a subcommand is required: conditions, sweep, or ccs")
        config = _load_json_object(args.config, "config file") if args.config else {}
        settings = _Settings(args, config)
        return _COMMANDS[args.command](settings)
    except _CliError as exc:
        print(f"pidcmp: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, TypeError, ConvergenceError) as exc:
        print(f"pidcmp: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
