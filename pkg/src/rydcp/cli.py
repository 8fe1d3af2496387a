"""Command-line front end.

    rydcp single   --config scenario.json [--output out.csv] [--format csv|json]
    rydcp sweep    --config sweep.json    [--jobs N] ...
    rydcp validate --config scenario.json
    rydcp preset list
    rydcp preset show <name>
    rydcp preset run <name> [--output ...] [--format ...] [--jobs N]

Exit codes: 0 success, 1 invalid input, 2 numerical convergence failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from . import __version__
from .config import (
    PRESETS,
    ScenarioConfig,
    columns_for,
    load_preset,
    parse_config,
    preset_raw,
    run_single,
    run_sweep,
)
from .errors import ConvergenceError, ValidationError
from .validity import full_report

EXIT_OK, EXIT_INVALID, EXIT_CONVERGENCE = 0, 1, 2


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v) or math.isinf(v):
            return repr(v)
        return f"{v:.16e}"
    return str(v)


def write_csv(columns, rows, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(c)) for c in columns])


def _json_value(v):
    if isinstance(v, float) and (math.isnan(v) or math.isinf(v)):
        return repr(v)
    return v


def write_json(columns, rows, stream):
    doc = {
        "version": __version__,
        "columns": list(columns),
        "rows": [{c: _json_value(row.get(c)) for c in columns} for row in rows],
    }
    json.dump(doc, stream, indent=2)
    stream.write("\n")


def _emit(columns, rows, args):
    writer = write_json if args.format == "json" else write_csv
    if args.output:
        with open(args.output, "w", newline="") as fh:
            writer(columns, rows, fh)
    else:
        writer(columns, rows, sys.stdout)


def _run(cfg: ScenarioConfig, args, want_sweep: bool | None = None):
    sweep = bool(cfg.axes) if want_sweep is None else want_sweep
    columns = columns_for(cfg)
    if sweep:
        rows = list(run_sweep(cfg, jobs=args.jobs))
    else:
        rows = [run_single(cfg)]
    _emit(columns, rows, args)


def cmd_single(args):
    cfg = parse_config(args.config)
    if cfg.axes:
        raise ValidationError("configuration defines sweep axes; use `rydcp sweep`")
    _run(cfg, args, want_sweep=False)


def cmd_sweep(args):
    cfg = parse_config(args.config)
    if not cfg.axes:
        raise ValidationError("configuration has no sweep axes; use `rydcp single`")
    _run(cfg, args, want_sweep=True)


def cmd_validate(args):
    cfg = parse_config(args.config)
    report = full_report(cfg.scenario)
    json.dump(report.as_dict(), sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_preset(args):
    if args.preset_cmd == "list":
        for name in PRESETS:
            print(name)
    elif args.preset_cmd == "show":
        json.dump(preset_raw(args.name), sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        _run(load_preset(args.name), args)


def _add_output_flags(p):
    p.add_argument("--output", "-o", help="write results here instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", "-j", type=int, default=1, help="worker processes for sweeps")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rydcp",
        description="Rydberg-atom excitation by an oscillating mirror (dynamic Casimir-Polder coupling).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("single", help="evaluate one scenario")
    p.add_argument("--config", "-c", required=True)
    _add_output_flags(p)
    p.set_defaults(func=cmd_single)

    p = sub.add_parser("sweep", help="evaluate a parameter sweep")
    p.add_argument("--config", "-c", required=True)
    _add_output_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="print the validity report of a scenario")
    p.add_argument("--config", "-c", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("preset", help="list, show or run the shipped presets")
    psub = p.add_subparsers(dest="preset_cmd", required=True)
    psub.add_parser("list")
    ps = psub.add_parser("show")
    ps.add_argument("name")
    pr = psub.add_parser("run")
    pr.add_argument("name")
    _add_output_flags(pr)
    p.set_defaults(func=cmd_preset)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ConvergenceError as exc:
        print(f"rydcp: numerical failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except ValidationError as exc:
        print(f"rydcp: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
