#!/usr/bin/env python3
"""
Command-line front end for the Volterra algebra toolkit.

    python -m volterra characters --algebra a.json
    python -m volterra sweep --suite associativity --mode extremal-exhaustive --dim 4

Exit status: 0 on success, 1 when a sweep finds theorem-violation witnesses,
2 on invalid input or usage.
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional

from rich.console import Console
from rich.markup import escape
from rich.table import Table

from volterra.config import get_settings
from volterra.errors import UsageError, VolterraError
from volterra.services.algebra import make_simplex_point, to_skew
from volterra.services.characters import enumerate_characters
from volterra.services.corpus import DEFAULT_GRID, MODES, describe_corpus, generate_corpus, parse_grid
from volterra.services.derivations import derivation_space
from volterra.services.dynamics import evolve, evolve_exact
from volterra.services.local import local_check, probe_conjecture
from volterra.services.rational import format_matrix, parse_rational
from volterra.services.structure import (
    associativity_report,
    canonical_associative,
    sweep_extremal,
    tournament_report,
)
from volterra.services.suites import SUITES, run_suite
from volterra.serialization import (
    dump_algebra,
    dumps_json,
    exact_trajectory_csv,
    load_algebra,
    sweep_csv,
    trajectory_csv,
)

logger = logging.getLogger(__name__)

console = Console()
error_console = Console(stderr=True)

EXIT_OK = 0
EXIT_WITNESSES = 1
EXIT_ERROR = 2

CSV_COMMANDS = ("evolve", "sweep", "derivation-sweep-3d")


def configure_logging(level: Optional[str] = None) -> None:
    """Root logging for CLI runs; library modules only create loggers"""
    logging.basicConfig(
        level=getattr(logging, (level or get_settings().log_level).upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )


def _emit(payload, output: str, text_renderer: Optional[Callable[[], None]] = None) -> None:
    if output == "text" and text_renderer is not None:
        text_renderer()
    else:
        sys.stdout.write(dumps_json(payload) + "\n")


def _key_value_table(title: str, rows: Dict[str, object]) -> Table:
    table = Table(title=title)
    table.add_column("field", style="cyan")
    table.add_column("value")
    for key, value in rows.items():
        table.add_row(key, str(value))
    return table


# ----------------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------------

def cmd_characters(args) -> int:
    A = load_algebra(args.algebra)
    found = enumerate_characters(A, include_trivial=args.include_trivial)

    def render():
        table = Table(title=f"Characters of dim {A.dim} algebra")
        table.add_column("E")
        table.add_column("trivial")
        for c in found:
            table.add_row("{" + ", ".join(map(str, c.subset)) + "}", str(c.is_trivial))
        console.print(table)

    _emit(found, args.output, render)
    return EXIT_OK


def cmd_associativity(args) -> int:
    report = associativity_report(load_algebra(args.algebra))

    def render():
        console.print(_key_value_table("Associativity", {
            "direct": report.direct,
            "by_theorem": report.by_theorem,
            "by_tournament": report.by_tournament,
            "extremal": report.extremal,
            "cyclic_triple": report.cyclic_triple,
            "witnesses": len(report.witnesses),
        }))

    _emit(report, args.output, render)
    return EXIT_OK if report.consistent else EXIT_WITNESSES


def cmd_tournament(args) -> int:
    report = tournament_report(load_algebra(args.algebra))

    def render():
        console.print(_key_value_table("Tournament", {
            "edges": " ".join(f"{k}->{i}" for k, i in report.edges),
            "scores": report.score_sequence,
            "extremal": report.extremal,
            "transitive": report.transitive,
            "cyclic_triple": report.cyclic_triple,
        }))

    _emit(report, args.output, render)
    return EXIT_OK


def cmd_sweep_extremal(args) -> int:
    summary = sweep_extremal(args.dim)

    def render():
        console.print(_key_value_table(f"Extremal algebras, dim {summary.dim}", {
            "total": summary.total,
            "associative": summary.associative,
            "expected associative (m!)": summary.expected_associative,
            "with cyclic triple": summary.with_cyclic_triple,
            "isomorphic to canonical": summary.isomorphic_to_canonical,
            "witnesses": len(summary.witnesses),
        }))

    _emit(summary, args.output, render)
    return EXIT_WITNESSES if summary.witnesses else EXIT_OK


def cmd_derivations(args) -> int:
    space = derivation_space(load_algebra(args.algebra))

    def render():
        console.print(f"[bold]dim Der(A) = {space.dim_space}[/bold]")
        for index, D in enumerate(space.basis):
            table = Table(title=f"basis map {index + 1}")
            for k in range(D.dim):
                table.add_column(f"e_{k + 1}")
            for row in format_matrix(D.entries):
                table.add_row(*row)
            console.print(table)

    _emit(space, args.output, render)
    return EXIT_OK


def cmd_derivation_sweep_3d(args) -> int:
    values = parse_grid(args.grid)
    corpus = generate_corpus("grid-3d", 3, grid=values)
    report = run_suite("derivations", corpus, describe_corpus("grid-3d", 3, grid=values), threads=args.threads, progress=error_console.is_terminal)
    rows = [
        {
            "p12_1": r.matrix[0][1],
            "p13_1": r.matrix[0][2],
            "p23_2": r.matrix[1][2],
            "condition": r.checks.get("condition"),
            "dim_space": r.checks.get("dim_space"),
        }
        for r in report.results
    ]

    if args.output == "csv":
        sys.stdout.write("p12_1,p13_1,p23_2,condition,dim_space\n")
        for row in rows:
            sys.stdout.write(",".join(str(row[key]) for key in row) + "\n")
    elif args.output == "text":
        table = Table(title="Derivation sweep, dim 3")
        for key in ("p12_1", "p13_1", "p23_2", "condition", "dim_space"):
            table.add_column(key)
        for row in rows:
            table.add_row(*(str(v) for v in row.values()))
        console.print(table)
    else:
        _emit({"rows": rows, "witnesses": report.witnesses}, "json")
    return report.exit_code


def cmd_local_check(args) -> int:
    result = local_check(load_algebra(args.algebra))
    _emit(result, args.output, lambda: console.print(_key_value_table("Local derivations", {
        "candidate_dim": result.candidate_dim,
        "derivation_dim": result.derivation_dim,
        "equal": result.equal,
    })))
    return EXIT_OK if result.equal else EXIT_WITNESSES


def cmd_probe_conjecture(args) -> int:
    report = probe_conjecture(load_algebra(args.algebra), seed=args.seed, samples=args.samples)
    _emit(report, args.output, lambda: console.print(_key_value_table("Local derivation probe", {
        "status": report.status,
        "derivation_dim": report.derivation_dim,
        "candidate_dim": report.candidate_dim,
        "refined_dim": report.refined_dim,
        "samples": report.samples,
    })))
    return EXIT_WITNESSES if report.status == "FAIL" else EXIT_OK


def cmd_evolve(args) -> int:
    A = load_algebra(args.algebra)
    try:
        x0 = make_simplex_point([parse_rational(part) for part in args.x0.split(",")])
    except VolterraError as e:
        raise UsageError(f"--x0: {e}")
    if args.exact:
        points = evolve_exact(A, x0, args.steps)
        if args.output == "json":
            _emit({"exact": True, "points": [p.coords for p in points]}, "json")
        else:
            sys.stdout.write(exact_trajectory_csv(points))
        return EXIT_OK
    trajectory = evolve(to_skew(A), x0, args.steps)
    if args.output == "json":
        _emit({
            "exact": False,
            "points": trajectory.points,
            "drift": trajectory.drift,
            "max_drift": trajectory.max_drift,
        }, "json")
    else:
        sys.stdout.write(trajectory_csv(trajectory))
    return EXIT_OK


def cmd_canonical(args) -> int:
    A = canonical_associative(args.dim)
    _emit(dump_algebra(A, args.form), "json")
    return EXIT_OK


def cmd_sweep(args) -> int:
    grid = parse_grid(args.grid) if args.grid else None
    if args.mode == "random" and args.seed is None:
        raise UsageError("--seed is required for random mode")
    corpus = generate_corpus(
        args.mode, args.dim, seed=args.seed, grid=grid, count=args.count, exclude_half=args.exclude_half
    )
    descriptor = describe_corpus(
        args.mode, args.dim, seed=args.seed, grid=grid, count=args.count, exclude_half=args.exclude_half
    )
    report = run_suite(args.suite, corpus, descriptor, threads=args.threads, progress=error_console.is_terminal)

    if args.output == "csv":
        sys.stdout.write(sweep_csv(report))
    elif args.output == "text":
        console.print(_key_value_table(f"{report.suite} sweep ({args.mode}, dim {args.dim})", report.counts))
        for line in report.witnesses[: get_settings().witness_cap]:
            console.print(f"[red]{line}[/red]")
    else:
        _emit(report, "json")
    return report.exit_code


# ----------------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--output', choices=['json', 'csv', 'text'], default=None,
                        help='Output format (default: json; csv for evolve). csv: evolve, sweep, derivation-sweep-3d only')
    common.add_argument('--log-level', default=None,
                        help='Logging level (default from config / VOLTERRA_LOG_LEVEL)')

    parser = argparse.ArgumentParser(
        prog='volterra',
        description='Genetic Volterra algebras: characters, associativity, derivations, dynamics',
    )
    sub = parser.add_subparsers(dest='command', required=True)

    def with_algebra(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument('--algebra', required=True, help='Algebra JSON file')
        return p

    p = with_algebra('characters', 'Enumerate character sets E')
    p.add_argument('--include-trivial', action='store_true', help='Also list E = {} and E = I')
    p.set_defaults(handler=cmd_characters)

    with_algebra('associativity', 'Decide associativity three ways').set_defaults(handler=cmd_associativity)
    with_algebra('tournament', 'Tournament of the skew matrix').set_defaults(handler=cmd_tournament)

    p = sub.add_parser('sweep-extremal', parents=[common], help='Census of all extremal algebras of one dimension')
    p.add_argument('--dim', type=int, required=True)
    p.set_defaults(handler=cmd_sweep_extremal)

    with_algebra('derivations', 'Basis of the derivation space').set_defaults(handler=cmd_derivations)

    p = sub.add_parser('derivation-sweep-3d', parents=[common], help='Derivation criterion over a 3d coefficient grid')
    p.add_argument('--grid', default=DEFAULT_GRID, help=f'Comma-separated rationals (default: {DEFAULT_GRID})')
    p.add_argument('--threads', type=int, default=None, help='Worker threads (default: VOLTERRA_THREADS)')
    p.set_defaults(handler=cmd_derivation_sweep_3d)

    with_algebra('local-check', 'Compare local-derivation candidates with derivations (dim 3)').set_defaults(
        handler=cmd_local_check
    )

    p = with_algebra('probe-conjecture', 'Experimental local-derivation probe in any dimension')
    p.add_argument('--seed', type=int, required=True)
    p.add_argument('--samples', type=int, default=None, help='Sampled interior points (default from config)')
    p.set_defaults(handler=cmd_probe_conjecture)

    p = with_algebra('evolve', 'QSO trajectory from a start point')
    p.add_argument('--x0', required=True, help='Start point, e.g. "1/2,1/4,1/4"')
    p.add_argument('--steps', type=int, default=100)
    p.add_argument('--exact', action='store_true', help='Exact rational iteration')
    p.set_defaults(handler=cmd_evolve)

    p = sub.add_parser('canonical', parents=[common], help='Canonical associative algebra of dimension m')
    p.add_argument('--dim', type=int, required=True)
    p.add_argument('--form', choices=['coeffs', 'skew'], default='coeffs')
    p.set_defaults(handler=cmd_canonical)

    p = sub.add_parser('sweep', parents=[common], help='Run a theorem suite over a generated corpus')
    p.add_argument('--suite', choices=list(SUITES), required=True)
    p.add_argument('--mode', choices=list(MODES), required=True)
    p.add_argument('--dim', type=int, required=True)
    p.add_argument('--seed', type=int, default=None, help='Required for random mode')
    p.add_argument('--count', type=int, default=None, help='Random corpus size')
    p.add_argument('--grid', default=None, help='Grid values for grid-3d mode')
    p.add_argument('--exclude-half', action='store_true', help='Random mode never draws p = 1/2')
    p.add_argument('--threads', type=int, default=None, help='Worker threads (default: VOLTERRA_THREADS)')
    p.set_defaults(handler=cmd_sweep)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.output is None:
        args.output = 'csv' if args.command == 'evolve' else 'json'
    configure_logging(args.log_level)
    try:
        if args.output == 'csv' and args.command not in CSV_COMMANDS:
            raise UsageError(f"--output csv is not available for {args.command}")
        return args.handler(args)
    except VolterraError as e:
        error_console.print(f"[red]error:[/red] {escape(str(e))}", highlight=False)
        logger.debug("Command failed", exc_info=True)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
