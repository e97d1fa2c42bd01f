"""
Command-line surface.

    treedepth-cycles solve <problem> --graph FILE [--forest FILE] [-k INT] [-l INT]
                           [--seed U64] [--repeat INT] [--stats FILE]
                           [--maximize | --minimize]
    treedepth-cycles forest --graph FILE
    treedepth-cycles count --graph FILE -l INT [--forest FILE] [--weights FILE]
    treedepth-cycles oracle <pcc|cw|mw> --graph FILE [-k INT] [-l INT]
                            [--weight INT] [--weights FILE]
    treedepth-cycles serve

Answers go to stdout, logs to stderr. Exit status is 0 for any successful
decision, 2 for input or validation errors.
"""

import argparse
import json
import sys
from collections.abc import Sequence
from dataclasses import asdict, dataclass
from pathlib import Path

import structlog

from .config import configure_logging, load_settings
from .decorators import logged_operation
from .driver import (
    ProblemInstance,
    ProblemKind,
    RunStats,
    SolveConfig,
    count_cycle_covers,
    longest_cycle,
    longest_path,
    min_cycle_cover,
    solve,
)
from .errors import ParameterValidationError
from .graph import Edge, Graph, parse_graph
from .oracle import brute_count_Cw, brute_count_Mw, brute_pcc
from .treedepth import (
    EliminationForest,
    build_dfs_forest,
    format_forest,
    parse_forest,
    validate_forest,
)

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 2


@dataclass(frozen=True)
class RunReport:
    """Key/value record written by --stats."""

    answer: str
    seed: int
    repetitions: int
    depth: int
    exclusive_calls: int
    inclusive_calls: int
    bound: int
    elapsed_ms: float
    peak_polys: int

    @classmethod
    def from_runs(
        cls, answer: str, config: SolveConfig, forest: EliminationForest, n: int,
        runs: Sequence[RunStats],
    ) -> "RunReport":
        """
        Summarize the runs: call counts and peak come from the most expensive
        run, depth and bound are the largest seen, elapsed time is the total.
        """
        if not runs:
            return cls(answer, config.seed, config.repetitions, forest.depth,
                       0, 0, 2 * n * 5**forest.depth, 0.0, 0)
        busiest = max(runs, key=lambda r: r.calls)
        return cls(
            answer=answer,
            seed=config.seed,
            repetitions=config.repetitions,
            depth=max(r.depth for r in runs),
            exclusive_calls=busiest.exclusive_calls,
            inclusive_calls=busiest.inclusive_calls,
            bound=max(r.bound for r in runs),
            elapsed_ms=round(sum(r.elapsed_ms for r in runs), 3),
            peak_polys=max(r.peak_polys for r in runs),
        )


def _read_graph(path: str) -> Graph:
    return parse_graph(Path(path).read_bytes())


def _read_forest(path: str | None, g: Graph) -> EliminationForest:
    if path is None:
        forest = build_dfs_forest(g)
        print(
            f"notice: no forest given, using depth-first forest of depth {forest.depth}",
            file=sys.stderr,
        )
        logger.info("No forest given, using depth-first elimination forest", depth=forest.depth)
        return forest
    return validate_forest(g, parse_forest(Path(path).read_bytes(), g.n))


def _read_weights(path: str | None, g: Graph) -> dict[Edge, int]:
    if path is None:
        return dict.fromkeys(g.edges, 1)
    tokens = Path(path).read_text().split()
    if len(tokens) != g.m:
        raise ParameterValidationError(
            f"weights file has {len(tokens)} entries but the graph has {g.m} edges"
        )
    try:
        values = [int(token) for token in tokens]
    except ValueError as e:
        raise ParameterValidationError(f"weights must be integers: {e}") from e
    if any(v < 0 for v in values):
        raise ParameterValidationError("weights must be non-negative")
    return dict(zip(g.edges, values, strict=True))


@logged_operation
def _cmd_solve(args: argparse.Namespace) -> int:
    settings = load_settings(seed=args.seed, repetitions=args.repeat)
    config = SolveConfig(
        seed=settings.seed, repetitions=settings.repetitions, stats=args.stats is not None
    )
    if args.stats is not None and (args.maximize or args.minimize):
        raise ParameterValidationError(
            "--stats reports a single decision and cannot be combined with "
            "--maximize or --minimize"
        )
    g = _read_graph(args.graph)
    forest = _read_forest(args.forest, g)
    kind = ProblemKind(args.problem)

    if args.maximize:
        if kind is ProblemKind.LONG_CYCLE:
            print(longest_cycle(g, forest, config))
        elif kind is ProblemKind.LONG_PATH:
            print(longest_path(g, forest, config))
        else:
            raise ParameterValidationError("--maximize applies to longcycle and longpath")
        return EXIT_OK
    if args.minimize:
        if kind is not ProblemKind.MIN_CYCLE_COVER:
            raise ParameterValidationError("--minimize applies to mincyclecover")
        best = min_cycle_cover(g, forest, config)
        print("NONE" if best is None else best)
        return EXIT_OK

    instance = ProblemInstance.for_graph(kind, g.n, args.k, args.l)
    runs: list[RunStats] = []
    answer = "YES" if solve(instance, g, forest, config, runs) else "NO"
    print(answer)

    if args.stats is not None:
        report = RunReport.from_runs(answer, config, forest, g.n, runs)
        Path(args.stats).write_text(json.dumps(asdict(report), indent=2) + "\n")
    return EXIT_OK


@logged_operation
def _cmd_forest(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    sys.stdout.write(format_forest(build_dfs_forest(g)))
    return EXIT_OK


@logged_operation
def _cmd_count(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    forest = _read_forest(args.forest, g)
    counts = count_cycle_covers(g, forest, args.l, _read_weights(args.weights, g))
    for weight, count in sorted(counts.items()):
        print(f"{weight} {count}")
    return EXIT_OK


@logged_operation
def _cmd_oracle(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph)
    if args.l is None:
        raise ParameterValidationError("oracle checks require -l")
    if args.check == "pcc":
        if args.k is None:
            raise ParameterValidationError("oracle pcc requires -k")
        print("YES" if brute_pcc(g, args.k, args.l) else "NO")
        return EXIT_OK
    if args.weight is None:
        raise ParameterValidationError(f"oracle {args.check} requires --weight")
    weights = _read_weights(args.weights, g)
    count = brute_count_Cw if args.check == "cw" else brute_count_Mw
    print(count(g, weights, args.weight, args.l))
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    from .server import main as serve_main

    serve_main()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treedepth-cycles",
        description="Decide cycle and path problems on graphs with a given elimination forest.",
    )
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    commands = parser.add_subparsers(dest="command", required=True)

    solve_parser = commands.add_parser("solve", help="decide a problem instance")
    solve_parser.add_argument("problem", choices=[kind.value for kind in ProblemKind])
    solve_parser.add_argument("--graph", required=True)
    solve_parser.add_argument("--forest")
    solve_parser.add_argument("-k", type=int)
    solve_parser.add_argument("-l", type=int)
    solve_parser.add_argument("--seed", type=int)
    solve_parser.add_argument("--repeat", type=int)
    solve_parser.add_argument("--stats", metavar="FILE")
    optimize = solve_parser.add_mutually_exclusive_group()
    optimize.add_argument("--maximize", action="store_true")
    optimize.add_argument("--minimize", action="store_true")
    solve_parser.set_defaults(handler=_cmd_solve)

    forest_parser = commands.add_parser("forest", help="print a depth-first elimination forest")
    forest_parser.add_argument("--graph", required=True)
    forest_parser.set_defaults(handler=_cmd_forest)

    count_parser = commands.add_parser("count", help="exact cycle-cover/cut counts per weight")
    count_parser.add_argument("--graph", required=True)
    count_parser.add_argument("--forest")
    count_parser.add_argument("-l", type=int, required=True)
    count_parser.add_argument("--weights", metavar="FILE")
    count_parser.set_defaults(handler=_cmd_count)

    oracle_parser = commands.add_parser("oracle", help="brute-force cross-checks")
    oracle_parser.add_argument("check", choices=["pcc", "cw", "mw"])
    oracle_parser.add_argument("--graph", required=True)
    oracle_parser.add_argument("-k", type=int)
    oracle_parser.add_argument("-l", type=int)
    oracle_parser.add_argument("--weight", type=int)
    oracle_parser.add_argument("--weights", metavar="FILE")
    oracle_parser.set_defaults(handler=_cmd_oracle)

    serve_parser = commands.add_parser("serve", help="run the MCP server on stdio")
    serve_parser.set_defaults(handler=_cmd_serve)

    return parser


def run_cli(argv: Sequence[str] | None = None) -> int:
    """
    Parse `argv` and run the selected command.

    Returns:
        Exit status: 0 on success, 2 on input or validation errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_INPUT_ERROR

    configure_logging(load_settings(log_level=args.log_level).log_level)

    try:
        return int(args.handler(args))
    except ParameterValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
