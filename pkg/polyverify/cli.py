"""
Command Line Interface
----------------------
polyverify verify | gauss | decompose | bounds | match-growth | selftest

--out names the report file when it ends in .json or .csv (the suffix also
picks the format); any other value is taken as the output directory, where
each command writes its default file names.

Exit codes: 0 when every check passes, 1 when a check reports failures,
2 on usage, configuration or domain errors.
"""

import argparse
import logging
import os
import sys
from typing import Any, List, Optional, Sequence, Tuple

from . import __version__
from .bounds import all_reports, bound_report, table_rows
from .config import Settings, load_settings
from .cusps import match_growth
from .eisenstein import CONGRUENCE_CLASSES, decomposition_rows
from .exceptions import ConfigError, DomainError
from .gauss import check_gauss_moduli, gauss_record
from .polygonal import verify_conjecture
from .qseries import SERIES_KINDS, polygon_series, series_rows
from .reports import ReportWriter
from .selftest import SelfTestSuite
from .workers import run_chunked

logger = logging.getLogger("polyverify")

SUPPORTED = sorted(CONGRUENCE_CLASSES)
BOUND_HEADER = ["m", "r", "M", "eisSlope", "normSqBound", "coeffBoundConst", "crossoverN", "finalConstant"]
DECOMPOSITION_HEADER = ["n", "s", "a", "b"]
SERIES_HEADER = ["n", "coefficient_num", "coefficient_den"]
FILE_SUFFIXES = {".json": "json", ".csv": "csv"}

Table = Tuple[Sequence[str], Sequence[Sequence[Any]]]


def _polygons(args: argparse.Namespace) -> List[int]:
    if args.all:
        return list(SUPPORTED)
    if args.m is None:
        raise DomainError("pass --m or --all")
    return [args.m]


def _split_out(out: Optional[str]) -> Tuple[Optional[str], Optional[str], Optional[str]]:
    """(report file, output directory, format implied by the suffix) for an --out value."""
    if not out:
        return None, None, None
    fmt = FILE_SUFFIXES.get(os.path.splitext(out)[1].lower())
    if fmt is None:
        return None, out, None
    return os.path.abspath(out), None, fmt


def _save(
    args: argparse.Namespace,
    writer: ReportWriter,
    stem: str,
    data: Any,
    table: Optional[Table] = None,
) -> str:
    """Write one report as CSV when asked and a table exists, JSON otherwise."""
    if args.format == "csv":
        if table is None:
            raise DomainError(f"{args.command} writes JSON only", value=args.out)
        return writer.save_csv(args.out_file or f"{stem}.csv", *table)
    return writer.save_json(args.out_file or f"{stem}.json", data, command=args.command)


def _save_per_polygon(
    args: argparse.Namespace,
    writer: ReportWriter,
    stem: str,
    items: List[Tuple[int, Any, Optional[Table]]],
) -> None:
    """One file per m, or everything in the single --out file."""
    if not args.out_file:
        for m, data, table in items:
            _save(args, writer, f"{stem}_m{m}", data, table)
        return
    if len(items) == 1:
        _, data, table = items[0]
        _save(args, writer, stem, data, table)
        return
    merged = None
    if all(table is not None for _, _, table in items):
        header = ["m", *items[0][2][0]]
        merged = (header, [[m, *row] for m, _, table in items for row in table[1]])
    _save(args, writer, stem, [data for _, data, _ in items], merged)


def _cmd_verify(args: argparse.Namespace, settings: Settings, writer: ReportWriter) -> int:
    n_max = args.max if args.max is not None else settings.verify_max
    status = 0
    items = []
    for m in _polygons(args):
        report = verify_conjecture(m, n_max, workers=settings.workers)
        items.append((m, report, None))
        if report.failures:
            print(f"m={m}: {len(report.failures)} failure(s) up to {n_max}, first {report.failures[:10]}")
            status = 1
        else:
            print(f"m={m}: every 1 <= n <= {n_max} is represented")
    _save_per_polygon(args, writer, "conjecture", items)
    return status


def _cmd_gauss(args: argparse.Namespace, settings: Settings, writer: ReportWriter) -> int:
    if args.check is not None:
        moduli = list(range(1, args.check + 1))
        failures = [f for chunk in run_chunked(check_gauss_moduli, moduli, settings.workers) for f in chunk]
        _save(args, writer, "gauss_check", {"maxModulus": args.check, "failures": failures})
        print(f"checked moduli 1..{args.check}: {len(failures)} mismatch(es)")
        return 1 if failures else 0
    if args.c is None:
        raise DomainError("pass --c (with --a and --b) or --check")
    record = gauss_record(args.a, args.b, args.c, settings.digits)
    _save(args, writer, f"gauss_{args.a}_{args.b}_{args.c}", record)
    print(f"G({args.a}, {args.b}; {args.c}) = {' + '.join(record.value_basis) or '0'} ~ {record.complex_approx}")
    return 0


def _cmd_decompose(args: argparse.Namespace, settings: Settings, writer: ReportWriter) -> int:
    n_max = args.max if args.max is not None else settings.series_length
    items = []
    for m in _polygons(args):
        if args.series:
            series = polygon_series(m, args.series, n_max)
            data = {"m": m, "kind": args.series, "truncation": series.truncation, "coefficients": series.to_list()}
            items.append((m, data, (SERIES_HEADER, series_rows(series))))
            print(f"m={m}: {args.series} series up to q^{n_max}")
            continue
        rows = decomposition_rows(m, n_max, class_only=not args.full_range)
        items.append((m, rows, (DECOMPOSITION_HEADER, [[row.n, row.s, row.a, row.b] for row in rows])))
        print(f"m={m}: {len(rows)} row(s) up to {n_max}")
    stem = f"series_{args.series}" if args.series else "decomposition"
    _save_per_polygon(args, writer, stem, items)
    return 0


def _cmd_bounds(args: argparse.Namespace, settings: Settings, writer: ReportWriter) -> int:
    if args.m is not None and not args.all:
        reports = [bound_report(args.m, settings.digits)]
    else:
        reports = list(all_reports(settings.digits))
    _save(args, writer, "bounds", reports, (BOUND_HEADER, table_rows(reports)))
    for rep in reports:
        print(f"m={rep.m}: ||f||^2 <= {rep.norm_sq_bound}, |b(n)| <= {rep.coeff_bound_const} n^(3/5), C_m = {rep.C_m:.3e}")
    return 0


def _cmd_match_growth(args: argparse.Namespace, settings: Settings, writer: ReportWriter) -> int:
    kmax = args.kmax if args.kmax is not None else settings.kmax
    status = 0
    items = []
    for m in _polygons(args):
        report = match_growth(
            m, kmax=kmax, workers=settings.workers, mode=args.mode, budget=settings.cusp_budget
        )
        items.append((m, report, None))
        print(f"m={m}: {report.checked} cusp(s), {len(report.mismatches)} mismatch(es)")
        if not report.ok:
            status = 1
    _save_per_polygon(args, writer, "growth", items)
    return status


def _cmd_selftest(args: argparse.Namespace, settings: Settings, writer: ReportWriter) -> int:
    suite = SelfTestSuite(settings, quick=args.quick)
    results = suite.run(only=args.family)
    _save(args, writer, "selftest", results)
    for result in results:
        mark = "PASS" if result.passed else "FAIL"
        line = f"[{mark}] {result.name} ({result.checked} checked)"
        if result.detail:
            line += f": {result.detail}"
        print(line)
        for failure in result.failures:
            print(f"    {failure}")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyverify",
        description="Verification toolkit for sums of polygonal numbers with coefficients 1, 2, 4, 8",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON settings file")
    common.add_argument("--workers", type=int, help="worker processes")
    common.add_argument("--digits", type=int, help="working precision in decimal digits")
    common.add_argument("--out", help="report file (.json or .csv) or output directory")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("-v", "--verbose", action="count", default=0)

    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", parents=[common], help="check representability up to a bound")
    verify.add_argument("--m", type=int)
    verify.add_argument("--max", type=int)
    verify.add_argument("--all", action="store_true", help="every m with an identity")
    verify.set_defaults(handler=_cmd_verify)

    gauss = sub.add_parser("gauss", parents=[common], help="evaluate or cross-check Gauss sums")
    gauss.add_argument("--a", type=int, default=1)
    gauss.add_argument("--b", type=int, default=0)
    gauss.add_argument("--c", type=int)
    gauss.add_argument("--check", type=int, metavar="MAX_C", help="compare closed form and direct sums for c <= MAX_C")
    gauss.set_defaults(handler=_cmd_gauss)

    decompose = sub.add_parser("decompose", parents=[common], help="s(n) = a(n) + b(n) table")
    decompose.add_argument("--m", type=int)
    decompose.add_argument("--max", type=int)
    decompose.add_argument("--all", action="store_true")
    decompose.add_argument("--full-range", action="store_true", help="include n off the congruence class")
    decompose.add_argument("--series", choices=SERIES_KINDS, help="export a q-series instead of the table")
    decompose.set_defaults(handler=_cmd_decompose)

    bounds = sub.add_parser("bounds", parents=[common], help="explicit bound pipeline")
    bounds.add_argument("--m", type=int)
    bounds.add_argument("--all", action="store_true")
    bounds.set_defaults(handler=_cmd_bounds)

    growth = sub.add_parser("match-growth", parents=[common], help="compare cusp growth of both sides")
    growth.add_argument("--m", type=int)
    growth.add_argument("--kmax", type=int)
    growth.add_argument("--all", action="store_true")
    growth.add_argument("--mode", choices=("sweep", "orbits"), default="sweep")
    growth.set_defaults(handler=_cmd_match_growth)

    selftest = sub.add_parser("selftest", parents=[common], help="run every oracle-equivalence check")
    selftest.add_argument("--quick", action="store_true", help="desk-size ranges")
    selftest.add_argument("--family", action="append", help="run only this family (repeatable)")
    selftest.set_defaults(handler=_cmd_selftest)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    args.out_file, output_dir, implied = _split_out(args.out)
    if implied:
        args.format = implied
    try:
        settings = load_settings(
            args.config, workers=args.workers, digits=args.digits, output_dir=output_dir
        )
        writer = ReportWriter(settings.output_dir)
        return args.handler(args, settings, writer)
    except ConfigError as e:
        logger.error("configuration error: %s", e)
        return 2
    except DomainError as e:
        logger.error("%s", e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
