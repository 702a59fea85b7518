"""Rota-Baxter operators on small semigroup algebras.

Entry point with CLI commands: catalog, equations, verify-matrix,
verify-families, solve-modp, check, enumerate, families, properties.

Exit codes: 0 success, 1 verification failed, 2 not associative,
3 bad input, 4 unsupported prime.
"""

import argparse
import json
import sys
from pathlib import Path

from loguru import logger

from src.algebra.field import parse_rational, require_oracle_prime
from src.algebra.semigroup import CayleyTable, catalog, catalog_entry, catalog_ids, census, table_from_json
from src.config import AppSettings, ExportConfig, OracleConfig, load_config
from src.errors import BadInputError, RotaBaxterError, UnsupportedFormatError
from src.families.catalog import ParametricFamily, family_catalog, load_families
from src.families.render import render_family_table
from src.families.verify import verify_families
from src.oracle.properties import property_suite
from src.oracle.report import completeness_check, export_reports
from src.oracle.solver import brute_force_modp
from src.rbsystem.export import export_system
from src.rbsystem.generator import generate_system, matrix_from_json, rb_defect

# Store config globally after load_config() so subcommands can access them
_settings: AppSettings
_oracle: OracleConfig
_export: ExportConfig

EXIT_OK = 0
EXIT_FAILED = 1


def _emit(text: str | bytes, out: str | None) -> None:
    """Write to --out when given, else stdout."""
    data = text.encode("utf-8") if isinstance(text, str) else text
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
        logger.info(f"Output written: {path}")
    else:
        sys.stdout.write(data.decode("utf-8"))


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as e:
        raise BadInputError(f"Cannot read {path}: {e}") from e


def _selector(args: argparse.Namespace) -> str | None:
    target = getattr(args, "target", None)
    sg = getattr(args, "sg", None)
    if target and sg and target != sg:
        raise BadInputError(f"two semigroup selectors given: {target!r} and {sg!r}")
    return target or sg


def _resolve_tables(args: argparse.Namespace, default_all: bool = False) -> list[tuple[str, CayleyTable]]:
    """Exactly one of: catalog id, "all", a table JSON path (positional, --sg or --table)."""
    selector = _selector(args)
    table_path = getattr(args, "table", None)
    if selector and table_path:
        raise BadInputError("give either a semigroup id or --table, not both")
    if table_path:
        return [(Path(table_path).stem, table_from_json(_read(table_path)))]
    if selector is None:
        if default_all:
            selector = "all"
        else:
            raise BadInputError("no semigroup selected; pass an id, 'all' or --table <path>")
    if selector == "all":
        return [(entry.id, entry.table) for entry in catalog()]
    if selector in catalog_ids():
        return [(selector, catalog_entry(selector).table)]
    if Path(selector).is_file():
        return [(Path(selector).stem, table_from_json(_read(selector)))]
    return [(selector, catalog_entry(selector).table)]


def _single_table(args: argparse.Namespace) -> tuple[str, CayleyTable]:
    tables = _resolve_tables(args)
    if len(tables) != 1:
        raise BadInputError(f"{args.command} works on one semigroup; 'all' is not accepted here")
    return tables[0]


def _families(args: argparse.Namespace) -> list[ParametricFamily]:
    path = getattr(args, "families", None) or _settings.families_path
    return load_families(path) if path else family_catalog()


def _prime(args: argparse.Namespace) -> int:
    p = args.prime if args.prime is not None else _oracle.default_prime
    return require_oracle_prime(p, _oracle.allowed_primes)


def cmd_catalog(args: argparse.Namespace) -> int:
    """List the 22 catalog semigroups."""
    families = _families(args)
    for entry in catalog():
        count = sum(1 for fam in families if fam.semigroup == entry.id)
        kind = "commutative" if entry.commutative else "noncommutative"
        print(f"{entry.id} order={entry.table.order} {kind} families={count}")
    return EXIT_OK


def cmd_equations(args: argparse.Namespace) -> int:
    """Generate and export the defining system of one semigroup."""
    fmt = args.format or _export.default_format
    sg_id, table = _single_table(args)
    system = generate_system(table, parse_rational(args.weight), sg_id)
    _emit(export_system(system, fmt, _export.latex_environment), args.out)
    return EXIT_OK


def cmd_verify_matrix(args: argparse.Namespace) -> int:
    """Check one operator matrix against the Rota-Baxter identity."""
    sg_id, table = _single_table(args)
    p = _prime(args) if args.prime is not None else None
    C = matrix_from_json(_read(args.matrix), p)
    weight = parse_rational(args.weight)
    defects = rb_defect(table, C, weight)
    ok = True
    for i, row in enumerate(defects, start=1):
        for j, vector in enumerate(row, start=1):
            if any(vector):
                ok = False
                print(f"({i},{j}): defect [{', '.join(str(v) for v in vector)}]")
            else:
                print(f"({i},{j}): ok")
    print(f"{sg_id}: {'Rota-Baxter operator' if ok else 'not a Rota-Baxter operator'}")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_verify_families(args: argparse.Namespace) -> int:
    """Substitute every selected family into its system."""
    families = _families(args)
    selector = _selector(args)
    if selector and selector != "all":
        catalog_entry(selector)
        families = [fam for fam in families if fam.semigroup == selector]
    reports = verify_families(families)
    for report in reports:
        if report.passed:
            print(f"{report.family_id}: pass")
            continue
        status = "FAIL (erratum)" if report.erratum else "FAIL"
        print(f"{report.family_id}: {status} {report.error}".rstrip())
        for (i, j, m), residual in report.failures().items():
            print(f"  E[{i},{j},{m}] residual: {residual}")
    curated = [r for r in reports if not r.erratum]
    passed = sum(r.passed for r in curated)
    errata = len(reports) - len(curated)
    print(f"{passed}/{len(curated)} pass" + (f" ({errata} errata excluded)" if errata else ""))
    return EXIT_OK if passed == len(curated) else EXIT_FAILED


def cmd_solve_modp(args: argparse.Namespace) -> int:
    """Print every F_p solution of one semigroup."""
    fmt = args.format or "text"
    if fmt not in ("text", "json"):
        raise UnsupportedFormatError(f"solve-modp prints text or json, got {fmt!r}")
    p = _prime(args)
    sg_id, table = _single_table(args)
    jobs = args.jobs or _settings.jobs
    solutions = brute_force_modp(table, p, parse_rational(args.weight), jobs=jobs, allowed_primes=_oracle.allowed_primes)
    if fmt == "json":
        payload = {"semigroup": sg_id, "p": p, "count": len(solutions), "solutions": [C.to_lists() for C in solutions.matrices()]}
        _emit(json.dumps(payload, indent=2) + "\n", args.out)
    else:
        lines = [str(C) for C in solutions.matrices()] + [f"{sg_id}: {len(solutions)} solutions over F_{p}"]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    """Completeness check of the family catalog against exhaustive search."""
    p = _prime(args)
    families = _families(args)
    jobs = args.jobs or _settings.jobs
    reports = []
    for sg_id, _ in _resolve_tables(args, default_all=True):
        report = completeness_check(sg_id, p, jobs=jobs, families=families, allowed_primes=_oracle.allowed_primes)
        reports.append(report)
        print(report.summary_line())
        for C in report.missing:
            print(f"  missing {C}")
        for C in report.spurious:
            print(f"  spurious {C}")
    passed = sum(r.passed for r in reports)
    print(f"{passed}/{len(reports)} pass over F_{p}")
    export_reports(reports, args.out or _settings.output_dir)
    return EXIT_OK if passed == len(reports) else EXIT_FAILED


def cmd_enumerate(args: argparse.Namespace) -> int:
    """Count associative tables of one order and their classes."""
    result = census(args.order)
    print(f"order={result.order} tables={result.total} iso_classes={result.iso_classes} iso_anti_classes={result.iso_anti_classes}")
    for table, match in result.matches.items():
        print(f"  {table} -> {match}")
    return EXIT_OK


def cmd_families(args: argparse.Namespace) -> int:
    """Render the family table of the selected semigroups."""
    selector = _selector(args)
    ids = catalog_ids() if selector in (None, "all") else [selector]
    _emit(render_family_table(ids, args.format or "text", _families(args)), args.out)
    return EXIT_OK


def cmd_properties(args: argparse.Namespace) -> int:
    """Scaling, opposite and transport properties of the F_p solution sets."""
    p = _prime(args)
    ok = True
    for sg_id, table in _resolve_tables(args, default_all=True):
        report = property_suite(
            table,
            p,
            samples=args.samples or _oracle.property_samples,
            seed=_oracle.seed,
            cross_check_samples=_oracle.cross_check_samples,
        )
        print(f"{sg_id}: {report.summary()}")
        ok = ok and report.passed
    return EXIT_OK if ok else EXIT_FAILED


def _add_selector(sub: argparse.ArgumentParser, positional: bool = True) -> None:
    if positional:
        sub.add_argument("target", nargs="?", help="Catalog id, 'all', or a table JSON path")
    sub.add_argument("--sg", help="Catalog id (e.g. NCS(5))")
    sub.add_argument("--table", help="Cayley table JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rota-baxter",
        description="Generate, verify and exhaustively cross-check Rota-Baxter operators on semigroup algebras",
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    catalog_parser = subparsers.add_parser("catalog", help="List catalog semigroups with family counts")
    catalog_parser.add_argument("--families", help="Family JSON file (default: shipped catalog)")
    catalog_parser.set_defaults(func=cmd_catalog)

    equations_parser = subparsers.add_parser("equations", help="Export the defining polynomial system")
    _add_selector(equations_parser)
    equations_parser.add_argument("--weight", default="0", help="Weight lambda as a rational (default: 0)")
    equations_parser.add_argument("--format", help="text, json, latex or cas")
    equations_parser.add_argument("--out", help="Output file (default: stdout)")
    equations_parser.set_defaults(func=cmd_equations)

    matrix_parser = subparsers.add_parser("verify-matrix", help="Check an operator matrix JSON file")
    matrix_parser.add_argument("matrix", help='Matrix JSON: {"n": 2, "c": [["1","-1/3"],["3","-1"]]}')
    _add_selector(matrix_parser, positional=False)
    matrix_parser.add_argument("--prime", type=int, help="Reduce the matrix into F_p first")
    matrix_parser.add_argument("--weight", default="0", help="Weight lambda (default: 0)")
    matrix_parser.set_defaults(func=cmd_verify_matrix)

    verify_parser = subparsers.add_parser("verify-families", help="Symbolically verify curated families")
    _add_selector(verify_parser)
    verify_parser.add_argument("--families", help="Family JSON file (default: shipped catalog)")
    verify_parser.set_defaults(func=cmd_verify_families)

    solve_parser = subparsers.add_parser("solve-modp", help="List every F_p solution")
    _add_selector(solve_parser)
    solve_parser.add_argument("--prime", type=int, help="Oracle prime (default from config/oracle.toml)")
    solve_parser.add_argument("--weight", default="0", help="Weight lambda (default: 0)")
    solve_parser.add_argument("--format", help="text or json")
    solve_parser.add_argument("--jobs", type=int, help="Worker processes")
    solve_parser.add_argument("--out", help="Output file (default: stdout)")
    solve_parser.set_defaults(func=cmd_solve_modp)

    check_parser = subparsers.add_parser("check", help="Completeness check against exhaustive F_p search")
    _add_selector(check_parser)
    check_parser.add_argument("--prime", type=int, help="Oracle prime (default from config/oracle.toml)")
    check_parser.add_argument("--jobs", type=int, help="Worker processes")
    check_parser.add_argument("--families", help="Family JSON file (default: shipped catalog)")
    check_parser.add_argument("--out", help="Report directory (default: OUTPUT_DIR)")
    check_parser.set_defaults(func=cmd_check)

    enumerate_parser = subparsers.add_parser("enumerate", help="Census of associative tables of one order")
    enumerate_parser.add_argument("order", type=int, help="Semigroup order (1..3)")
    enumerate_parser.set_defaults(func=cmd_enumerate)

    families_parser = subparsers.add_parser("families", help="Render the family classification table")
    _add_selector(families_parser)
    families_parser.add_argument("--format", help="text, json or latex")
    families_parser.add_argument("--families", help="Family JSON file (default: shipped catalog)")
    families_parser.add_argument("--out", help="Output file (default: stdout)")
    families_parser.set_defaults(func=cmd_families)

    properties_parser = subparsers.add_parser("properties", help="Run the F_p property suite")
    _add_selector(properties_parser)
    properties_parser.add_argument("--prime", type=int, help="Oracle prime (default from config/oracle.toml)")
    properties_parser.add_argument("--samples", type=int, help="Solutions sampled per property")
    properties_parser.set_defaults(func=cmd_properties)

    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point with CLI argument parsing."""
    global _settings, _oracle, _export
    _settings, _oracle, _export = load_config()

    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return EXIT_OK

    try:
        return args.func(args)
    except RotaBaxterError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
