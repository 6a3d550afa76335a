# app.py
"""ckit command line: canonical bundle diagnostics for Lie algebras and solvmanifolds.

Commands:
  parse FILE                 read a Salamon tuple or algebra JSON and print it back
  check FILE [options]       run the full diagnostic pipeline
  section FILE --j FILE      build and verify the closed (n,0)-form
  lattice-verify CERT.json   verify a lattice certificate
  catalog list|show|run      the built-in examples
  sweep                      closed-sigma criterion over random samples
"""

import argparse
import json
import logging
import sys
import traceback

from components.catalog import (
    build,
    instance_to_json,
    list_entries,
    run_catalog,
)
from components.lattice_report import certificate_entry
from components.pipeline import PipelineInput, run_pipeline
from components.report_export import dumps_report, export_summary_csv, summarize_catalog
from components.salamon_parser import format_salamon, parse_salamon
from components.theorem_sweep import run_sweep, sweep_passed
from utils.constants import (
    DEFAULT_M_VALUES,
    DEFAULT_SWEEP_SAMPLES,
    DEFAULT_SWEEP_SEED,
    EXIT_INPUT_ERROR,
    EXIT_NEGATIVE,
    EXIT_OK,
    SCHEMA_VERSION,
)
from utils.exceptions import CkitError
from utils.file_ops import (
    is_json_path,
    load_algebra_document,
    load_certificate_file,
    load_structure_file,
    load_triple_file,
    read_text,
    save_report,
)
from utils.lie_algebra import algebra_to_json
from utils.scalars import parse_scalar

logger = logging.getLogger(__name__)

DEFAULT_STRUCTURE_NAME = "J"


def parse_assignments(items):
    """["a=1/2", "b=pi"] -> {"a": "1/2", "b": "pi"} (values stay text)."""
    out = {}
    for item in items or []:
        if "=" not in item:
            raise CkitError(f"Expected name=value, got '{item}'")
        name, value = item.split("=", 1)
        out[name.strip()] = value.strip()
    return out


def scalar_params(items):
    return {name: parse_scalar(value) for name, value in parse_assignments(items).items()}


def parse_m_range(text):
    """"3..10" -> range(3, 11); "5" -> [5]; "3,5,7" -> [3, 5, 7]."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise CkitError(f"Invalid m range '{text}'") from e


def parse_periods(items, structure=DEFAULT_STRUCTURE_NAME):
    """--period values "2pi" or "x8=pi" -> {structure: ((label, value), ...)}.

    A bare value has label None and applies to the coordinate the section varies along.
    """
    entries = []
    for item in items or []:
        if "=" in item:
            label, value = item.split("=", 1)
            label = label.strip()
        else:
            label, value = None, item
        entries.append((label, parse_scalar(value.strip())))
    return {structure: tuple(entries)} if entries else {}


def load_algebra(path, params):
    """Algebra from a JSON document or a Salamon tuple file."""
    if is_json_path(path):
        return load_algebra_document(path, params)
    return parse_salamon(read_text(path).strip(), params)


def emit(report, args):
    """Print the report (JSON or a short summary) and save it when --out is given."""
    if getattr(args, "json", False):
        sys.stdout.write(dumps_report(report))
    else:
        print_summary(report)
    out = getattr(args, "out", None)
    if out:
        saved = save_report(report, out)
        if saved is None:
            logger.error(f"Report could not be saved to {out}")
            return False
    return True


def print_summary(report):
    for name, stage in report["stages"].items():
        status = stage.get("status")
        line = f"{name:<13} {status}"
        if status == "skipped":
            line += f" ({stage.get('reason')})"
        elif status == "error":
            line += f" ({stage.get('error')})"
        print(line)
        for sname, entry in stage.get("structures", {}).items():
            details = []
            for key in ("verdict", "obstruction", "lambda", "verified"):
                if key in entry:
                    details.append(f"{key}={entry[key]}")
            for row in entry.get("periods", []):
                details.append(f"{row['period']}: {row['status']}")
            if entry.get("status") in ("skipped", "error"):
                details.append(entry.get("reason") or entry.get("error", ""))
            print(f"  {sname}: {', '.join(details)}")
        for cert in stage.get("certificates", []):
            print(f"  {cert['name']}: {'passed' if cert['passed'] else 'failed ' + str(cert.get('failing'))}")


def cmd_parse(args):
    params = scalar_params(args.param)
    L = load_algebra(args.file, params)
    if args.json:
        sys.stdout.write(json.dumps(algebra_to_json(L), indent=2, ensure_ascii=False) + "\n")
    else:
        print(format_salamon(L))
    return EXIT_OK


def cmd_check(args):
    params = scalar_params(args.param)
    L = load_algebra(args.file, params)
    structures = {}
    if args.j:
        structures[DEFAULT_STRUCTURE_NAME] = load_structure_file(args.j, L.dim, params)
    triple = load_triple_file(args.triple, L.dim, params) if args.triple else None
    certificates = tuple(load_certificate_file(path) for path in args.cert or [])
    inp = PipelineInput(
        L=L,
        structures=structures,
        triple=triple,
        certificates=certificates,
        periods=parse_periods(args.period) if structures else {},
        source=args.file,
    )
    report, code = run_pipeline(inp)
    if not emit(report, args):
        return EXIT_INPUT_ERROR
    return code


def cmd_section(args):
    params = scalar_params(args.param)
    L = load_algebra(args.file, params)
    J = load_structure_file(args.j, L.dim, params)
    inp = PipelineInput(
        L=L,
        structures={DEFAULT_STRUCTURE_NAME: J},
        periods=parse_periods(args.period),
        source=args.file,
    )
    report, code = run_pipeline(inp)
    stages = report["stages"]
    section_report = {
        "schema": SCHEMA_VERSION,
        "input": report["input"],
        "stages": {name: stages[name] for name in ("structure", "complex", "section", "invariance")},
    }
    if not emit(section_report, args):
        return EXIT_INPUT_ERROR
    return code


def cmd_lattice_verify(args):
    cert = load_certificate_file(args.cert)
    entry = certificate_entry(cert)
    report = {"schema": SCHEMA_VERSION, "certificate": entry}
    sys.stdout.write(dumps_report(report))
    if args.out and save_report(report, args.out) is None:
        return EXIT_INPUT_ERROR
    if "error" in entry:
        return EXIT_INPUT_ERROR
    return EXIT_OK if entry["passed"] else EXIT_NEGATIVE


def cmd_catalog_list(args):
    entries = list_entries()
    if args.json:
        sys.stdout.write(json.dumps(entries, indent=2, ensure_ascii=False) + "\n")
        return EXIT_OK
    for entry in entries:
        params = ", ".join(f"{p['name']}={p['default']}" for p in entry["params"])
        print(f"{entry['name']:<24} {entry['description']}" + (f" [{params}]" if params else ""))
    return EXIT_OK


def cmd_catalog_show(args):
    instance = build(args.name, parse_assignments(args.param))
    sys.stdout.write(json.dumps(instance_to_json(instance), indent=2, ensure_ascii=False) + "\n")
    return EXIT_OK


def cmd_catalog_run(args):
    m_values = parse_m_range(args.m) if args.m else None
    results = run_catalog(args.names or None, m_values, parse_assignments(args.param))
    df = summarize_catalog(results)
    if args.json:
        payload = {
            "schema": SCHEMA_VERSION,
            "results": [
                {"name": r.name, "params": r.params, "matched": r.matched, "error": r.error, "report": r.report}
                for r in results
            ],
        }
        sys.stdout.write(dumps_report(payload))
    else:
        for r in results:
            params = ", ".join(f"{k}={v}" for k, v in r.params.items())
            print(f"{r.name:<24} {params:<24} {'matched' if r.matched else 'MISMATCH'}")
            if r.error:
                print(f"  {r.error}")
            for c in r.checks:
                if not c.matched:
                    print(f"  {c.structure}:{c.field} expected {c.expected}, got {c.actual}")
    if args.csv and export_summary_csv(df, args.csv) is None:
        return EXIT_INPUT_ERROR
    if any(r.error for r in results):
        return EXIT_INPUT_ERROR
    return EXIT_OK if all(r.matched for r in results) else EXIT_NEGATIVE


def cmd_sweep(args):
    instances = []
    if not args.no_catalog:
        for entry in list_entries():
            try:
                instances.append(build(entry["name"]))
            except CkitError as e:
                logger.error(f"Catalog entry {entry['name']} could not be built: {e}")
                return EXIT_INPUT_ERROR
    df = run_sweep(args.samples, args.seed, instances)
    failed = df[~df["Agree"].fillna(False).astype(bool)]
    print(f"{len(df)} samples, {len(failed)} disagreements")
    for _, row in failed.iterrows():
        print(f"  {row['Sample']}: {row['Error'] or row['Verdict']}")
    if args.csv and export_summary_csv(df, args.csv) is None:
        return EXIT_INPUT_ERROR
    return EXIT_OK if sweep_passed(df) else EXIT_NEGATIVE


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ckit",
        description="Exact diagnostics for canonical bundles of Lie groups and solvmanifolds.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    verbosity.add_argument("--quiet", "-q", action="store_true", help="warnings and errors only")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a Salamon tuple or algebra JSON")
    p.add_argument("file")
    p.add_argument("--param", action="append", metavar="NAME=VALUE", help="bind a parameter")
    p.add_argument("--json", action="store_true", help="print the algebra JSON document")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("check", help="run the full diagnostic pipeline")
    p.add_argument("file")
    p.add_argument("--j", metavar="FILE", help="complex structure document")
    p.add_argument("--triple", metavar="FILE", help="hypercomplex triple document")
    p.add_argument("--cert", action="append", metavar="FILE", help="lattice certificate (repeatable)")
    p.add_argument("--period", action="append", metavar="[LABEL=]VALUE", help="lattice period, e.g. 2pi")
    p.add_argument("--param", action="append", metavar="NAME=VALUE", help="bind a parameter")
    p.add_argument("--json", action="store_true", help="print the JSON report")
    p.add_argument("--out", metavar="FILE", help="save the JSON report")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("section", help="build and verify the closed (n,0)-form")
    p.add_argument("file")
    p.add_argument("--j", metavar="FILE", required=True, help="complex structure document")
    p.add_argument("--period", action="append", metavar="[LABEL=]VALUE", help="lattice period, e.g. 2pi")
    p.add_argument("--param", action="append", metavar="NAME=VALUE", help="bind a parameter")
    p.add_argument("--json", action="store_true", help="print the JSON report")
    p.add_argument("--out", metavar="FILE", help="save the JSON report")
    p.set_defaults(func=cmd_section)

    p = sub.add_parser("lattice-verify", help="verify a lattice certificate")
    p.add_argument("cert")
    p.add_argument("--out", metavar="FILE", help="save the JSON result")
    p.set_defaults(func=cmd_lattice_verify)

    catalog = sub.add_parser("catalog", help="built-in examples")
    csub = catalog.add_subparsers(dest="catalog_command", required=True)
    p = csub.add_parser("list", help="list entries and their parameters")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog_list)
    p = csub.add_parser("show", help="print one entry")
    p.add_argument("name")
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.set_defaults(func=cmd_catalog_show)
    p = csub.add_parser("run", help="run entries and compare with their expected diagnostics")
    p.add_argument("names", nargs="*")
    p.add_argument("--m", metavar="RANGE", help=f"lattice parameters, e.g. {DEFAULT_M_VALUES.start}..{DEFAULT_M_VALUES.stop - 1}")
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("--json", action="store_true", help="print all reports as JSON")
    p.add_argument("--csv", metavar="FILE", help="export the check summary")
    p.set_defaults(func=cmd_catalog_run)

    p = sub.add_parser("sweep", help="closed-sigma criterion over random samples")
    p.add_argument("--samples", type=int, default=DEFAULT_SWEEP_SAMPLES)
    p.add_argument("--seed", type=int, default=DEFAULT_SWEEP_SEED)
    p.add_argument("--no-catalog", action="store_true", help="random samples only")
    p.add_argument("--csv", metavar="FILE", help="export the sample table")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    """Parse arguments, run the command and return its exit code."""
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except CkitError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except Exception as e:
        logger.error(f"Unexpected error: {e}")
        logger.error(traceback.format_exc())
        return EXIT_INPUT_ERROR


if __name__ == '__main__':
    sys.exit(main())
