"""Command-line entry point ``perdomcoh``."""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .catalog import REGRESSION_SET, CatalogError, catalog, catalog_raw, fixture_text, list_names
from .config import FORMATS, ConfigError, ScenarioConfig, dump_json, load_config
from .datum import DatumError
from .report import EXIT_CHECK_FAILED, EXIT_ERROR, EXIT_OK, build_report, render
from .roots import EnumerationCapError, RootDatumError


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--check", action="store_true", help="run validation, LES, Euler, splitting and invariant checks")
    p.add_argument("--pages", action="store_true", help="include the E1 and E2 pages")
    p.add_argument("--euler", action="store_true", help="include the Euler characteristics")
    p.add_argument("--format", choices=FORMATS, help="output format (default text)")
    p.add_argument("--cap", type=int, help="Weyl group enumeration cap")
    p.add_argument("-o", "--output", help="write the report to this file instead of stdout")


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perdomcoh",
        description="Compactly supported cohomology of p-adic period domains, computed combinatorially.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="compute a scenario from a JSON config")
    run.add_argument("config", help="path to a config file")
    _add_run_flags(run)

    cat = sub.add_parser("catalog", help="run or emit a catalog scenario")
    cat.add_argument("name", nargs="?", help="e.g. drinfeld(3), lubin_tate(2), weil_restriction_gl2")
    cat.add_argument("--emit", action="store_true", help="print the scenario's config instead of running it")
    cat.add_argument("--list", action="store_true", help="list scenario names")
    _add_run_flags(cat)

    st = sub.add_parser("selftest", help="run the invariant suite and fixture comparison on the catalog")
    st.add_argument("-v", "--verbose", action="store_true")
    return parser


def _execute(sc: ScenarioConfig, args) -> int:
    sc = sc.with_options(
        checks=True if args.check else None,
        pages=True if args.pages else None,
        euler=True if args.euler else None,
        format=args.format,
        cap=args.cap,
    )
    report = build_report(sc)
    text = render(report.data, sc.options["format"])
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report.exit_code


def _selftest(verbose: bool) -> int:
    failed = 0
    for name in REGRESSION_SET:
        sc = catalog(name).with_options(checks=True)
        report = build_report(sc)
        problems = []
        if report.exit_code != EXIT_OK:
            problems.append(f"exit code {report.exit_code}")
        expected = fixture_text(name)
        if expected is None:
            problems.append("no fixture")
        elif render(report.data, "json") != expected:
            problems.append("differs from fixture")
        if verbose and "checks" in report.data:
            for c in report.data["checks"]["invariants"]:
                print(f"    {name}: {c['name']} {'pass' if c['passed'] else 'FAIL'}")
        print(f"{'FAIL' if problems else 'pass'}  {name}" + (f"  ({'; '.join(problems)})" if problems else ""))
        failed += bool(problems)
    print(f"{len(REGRESSION_SET) - failed}/{len(REGRESSION_SET)} scenarios passed")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "run":
            return _execute(load_config(args.config), args)
        if args.command == "catalog":
            if args.list or not args.name:
                print("\n".join(list_names()))
                return EXIT_OK
            if args.emit:
                sys.stdout.write(dump_json(catalog_raw(args.name)))
                return EXIT_OK
            return _execute(catalog(args.name), args)
        return _selftest(args.verbose)
    except (ConfigError, CatalogError, DatumError, RootDatumError) as exc:
        print(f"perdomcoh: error: {exc}", file=sys.stderr)
    except EnumerationCapError as exc:
        print(f"perdomcoh: error: {exc} (raise --cap)", file=sys.stderr)
    except OSError as exc:
        print(f"perdomcoh: error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
