"""Command-line front end.

Subcommands: evaluate, sweep, spectrum, presets, validate. Machine output
goes to stdout; diagnostics go to stderr. Exit codes: 0 success, 1 valid but
infeasible scenario, 2 input or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import yaml

from .engine import (SweepAxis, SweepSpec, evaluate, report_document,
                     round_sig, sweep, sweep_document)
from .errors import Diagnostic, StageError, ValidationError
from .presets import (CSV_KINDS, SpectralProfile, load_default_catalog,
                      validate_profile)
from .scenario import load_scenario_file

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT_ERROR = 2


def _print_diagnostics(diags: list[Diagnostic]) -> None:
    for d in diags:
        location = f" [{d.source}" + (f":{d.line}" if d.line else "") + "]" if d.source else ""
        print(f"{d.severity}: {d.code}: {d.message}{location}", file=sys.stderr)


def _parse_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"range must be 'start:stop:step', got {text!r}")
    return float(parts[0]), float(parts[1]), float(parts[2])


def _format_cell(value) -> str:
    if isinstance(value, float):
        rounded = round_sig(value)
        return rounded if isinstance(rounded, str) else f"{rounded:.9g}"
    if value is None:
        return ""
    return str(value)


def _sweep_csv(doc: dict) -> str:
    lines = [",".join(doc["columns"])]
    for row in doc["rows"]:
        lines.append(",".join(_format_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def cmd_evaluate(args) -> int:
    catalog = load_default_catalog(args.data_dir)
    scenario = load_scenario_file(args.scenario, catalog)
    report = evaluate(scenario)
    doc = report_document(report, include_stage_spectra=args.stage_spectra)
    print(json.dumps(doc, indent=2))
    return EXIT_OK if report.constraints.feasible else EXIT_INFEASIBLE


def cmd_sweep(args) -> int:
    catalog = load_default_catalog(args.data_dir)
    path = Path(args.scenario)
    base_doc = yaml.safe_load(path.read_text(encoding="utf-8"))
    # Full validation up front so bad scenarios exit 2 before the grid runs.
    from .scenario import scenario_from_document
    scenario_from_document(base_doc, catalog, base_dir=path.parent)

    axes = [SweepAxis(args.param, *_parse_range(args.range))]
    if args.param2:
        if not args.range2:
            raise ValueError("--param2 requires --range2")
        axes.append(SweepAxis(args.param2, *_parse_range(args.range2)))
    metrics = tuple(m.strip() for m in args.metric.split(",") if m.strip())
    spec = SweepSpec(axes=tuple(axes), metrics=metrics)
    result = sweep(base_doc, spec, catalog, base_dir=path.parent)
    doc = sweep_document(result)
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        sys.stdout.write(_sweep_csv(doc))
    return EXIT_OK


def cmd_spectrum(args) -> int:
    catalog = load_default_catalog(args.data_dir)
    scenario = load_scenario_file(args.scenario, catalog)
    report = evaluate(scenario)
    doc = report_document(report, include_stage_spectra=True)
    spectra = doc["stage_spectra"]
    names = [stage["name"].replace("-", "_") for stage in spectra["stages"]]
    lines = [",".join(["wavelength_nm"] + names)]
    for i, wl in enumerate(spectra["wavelength_nm"]):
        row = [f"{wl:g}"] + [_format_cell(float(stage["values"][i]))
                             for stage in spectra["stages"]]
        lines.append(",".join(row))
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_presets(args) -> int:
    catalog = load_default_catalog(args.data_dir)
    _print_diagnostics(catalog.diagnostics)
    listing = []
    for (kind, name) in sorted(catalog.entries):
        entry = catalog.entries[(kind, name)]
        item = {"kind": kind, "name": name}
        payload = entry.payload
        if isinstance(payload, SpectralProfile) and payload.provenance:
            item["provenance"] = payload.provenance
        elif getattr(payload, "provenance", None):
            item["provenance"] = payload.provenance
        listing.append(item)
    if args.format == "json":
        print(json.dumps({"presets": listing}, indent=2))
    else:
        for item in listing:
            print(f"{item['kind']}\t{item['name']}")
    return EXIT_OK


def cmd_validate(args) -> int:
    catalog = load_default_catalog(args.data_dir)
    path = Path(args.path)
    kind = args.kind
    if kind is None:
        parts = path.name.split(".")
        if path.suffix in (".yaml", ".yml", ".json"):
            kind = "scenario"
        elif len(parts) >= 3 and parts[0] in CSV_KINDS:
            kind = parts[0]
        elif path.suffix == ".profile":
            kind = "sensor"
        else:
            print(f"error: cannot infer profile kind from {path.name!r}; pass --kind",
                  file=sys.stderr)
            return EXIT_INPUT_ERROR
    if kind == "scenario":
        try:
            load_scenario_file(path, catalog)
        except ValidationError as exc:
            _print_diagnostics(exc.diagnostics)
            return EXIT_INPUT_ERROR
        print("ok")
        return EXIT_OK
    payload, diags = validate_profile(kind, path.read_text(encoding="utf-8"),
                                      source=str(path))
    _print_diagnostics(diags)
    if payload is None:
        return EXIT_INPUT_ERROR
    print("ok")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uwcam",
                                     description="Underwater camera system simulator")
    parser.add_argument("--data-dir", help="extra preset directory (overlays bundled data)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evaluate", help="evaluate a scenario and print the report")
    p.add_argument("--scenario", required=True)
    p.add_argument("--format", choices=("json",), default="json")
    p.add_argument("--stage-spectra", action="store_true",
                   help="include per-stage spectra in the report")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="sweep one or two parameters")
    p.add_argument("--scenario", required=True)
    p.add_argument("--param", required=True, help="dotted document path, e.g. lens.aperture_number")
    p.add_argument("--range", required=True, help="start:stop:step (inclusive)")
    p.add_argument("--param2")
    p.add_argument("--range2")
    p.add_argument("--metric", required=True, help="comma-separated metric names")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("spectrum", help="write per-stage spectra as CSV")
    p.add_argument("--scenario", required=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("presets", help="list catalog entries")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_presets)

    p = sub.add_parser("validate", help="validate a scenario or profile file")
    p.add_argument("path")
    p.add_argument("--kind", choices=tuple(CSV_KINDS) + ("sensor", "scenario"))
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        _print_diagnostics(exc.diagnostics)
        return EXIT_INPUT_ERROR
    except (FileNotFoundError, NotADirectoryError, KeyError, ValueError, StageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
