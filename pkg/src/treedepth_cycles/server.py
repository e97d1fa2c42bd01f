"""
treedepth-cycles MCP Server

Exposes the cycle-problem solver, the depth-first elimination forest and the
brute-force oracles as Model Context Protocol tools.
"""

import sys
from collections.abc import Callable
from dataclasses import asdict
from typing import Any, overload

import structlog
from fastmcp import FastMCP

from . import __version__
from .cli import RunReport
from .config import configure_logging, load_settings
from .decorators import preprocess_params
from .driver import ProblemInstance, ProblemKind, RunStats, SolveConfig, solve
from .errors import ParameterValidationError, safe_tool_execution
from .graph import Graph
from .oracle import brute_count_Cw, brute_count_Mw, brute_pcc
from .treedepth import build_dfs_forest, validate_forest

# stdout carries the MCP stream; every log line goes to stderr
configure_logging(load_settings().log_level)

logger = structlog.get_logger(__name__)

SERVER_NAME = "treedepth-cycles"

# Global registry for tools before server is available
_tool_registry: list[Callable[..., Any]] = []

server: FastMCP = FastMCP(SERVER_NAME)


@overload
def register_tool(
    func: Callable[..., Any], *, enable_preprocessing: bool = True
) -> Callable[..., Any]: ...


@overload
def register_tool(
    func: None = None, *, enable_preprocessing: bool = True
) -> Callable[[Callable[..., Any]], Callable[..., Any]]: ...


def register_tool(
    func: Callable[..., Any] | None = None, *, enable_preprocessing: bool = True
) -> Callable[..., Any] | Callable[[Callable[..., Any]], Callable[..., Any]]:
    """
    Register an MCP tool: JSON-string preprocessing, standardized error
    responses, then the module registry.

    Args:
        func: The function to register as an MCP tool
        enable_preprocessing: Whether to enable parameter preprocessing (default: True)

    Returns:
        Wrapped function with full MCP tool support and registry registration
    """

    def decorator(f: Callable[..., Any]) -> Callable[..., Any]:
        processed_func = preprocess_params(f) if enable_preprocessing else f
        safe_func = safe_tool_execution(processed_func)
        _tool_registry.append(safe_func)

        logger.debug(
            "Tool registered", tool_name=f.__name__, preprocessing=enable_preprocessing
        )
        return safe_func

    return decorator if func is None else decorator(func)


def setup_tool_registration(fastmcp_server: FastMCP) -> None:
    """Register every tool in the registry with `fastmcp_server`."""
    for tool_func in _tool_registry:
        try:
            fastmcp_server.tool(tool_func)
            logger.debug("Tool registered with FastMCP", tool_name=tool_func.__name__)
        except Exception as e:
            logger.error(
                "Failed to register tool with FastMCP",
                tool_name=tool_func.__name__,
                error=str(e),
                error_type=type(e).__name__,
            )


def _graph_from(vertex_count: int, edges: list[list[int]]) -> Graph:
    pairs = []
    for edge in edges:
        if len(edge) != 2:
            raise ParameterValidationError(
                f"each edge must be a pair of vertex ids, got {edge}",
                suggestions=["Pass edges as [[u, v], ...]"],
            )
        pairs.append((int(edge[0]), int(edge[1])))
    return Graph.from_edges(vertex_count, pairs)


def _problem_kind(problem: str) -> ProblemKind:
    try:
        return ProblemKind(problem.lower())
    except ValueError:
        raise ParameterValidationError(
            f"unknown problem {problem!r}",
            suggestions=[f"Use one of: {', '.join(kind.value for kind in ProblemKind)}"],
        ) from None


@register_tool
def solve_problem(
    problem: str,
    vertex_count: int,
    edges: list[list[int]],
    k: int | None = None,
    length: int | None = None,
    parents: list[int] | None = None,
    seed: int | None = None,
    repetitions: int | None = None,
) -> dict[str, Any]:
    """
    Decide a cycle problem on a graph with an optional elimination forest.

    YES answers are always correct; NO is wrong with probability at most
    2**-repetitions.

    Args:
        problem: hamcycle, hampath, longcycle, longpath, mincyclecover or pcc
        vertex_count: Number of vertices n; vertices are 0..n-1
        edges: Edge list [[u, v], ...]
        k: Cycle budget (mincyclecover, pcc)
        length: Number of vertices to visit (longcycle, longpath, pcc)
        parents: Parent id per vertex, -1 for roots; a depth-first forest when omitted
        seed: Random seed (default from TDC_SEED, else 0)
        repetitions: Independent runs (default from TDC_REPEAT, else 20)

    Returns:
        {"success": True, "answer": "YES"|"NO", "stats": {...}}
    """
    kind = _problem_kind(problem)
    g = _graph_from(vertex_count, edges)
    forest = build_dfs_forest(g) if parents is None else validate_forest(g, parents)
    settings = load_settings(seed=seed, repetitions=repetitions)
    config = SolveConfig(seed=settings.seed, repetitions=settings.repetitions, stats=True)

    runs: list[RunStats] = []
    instance = ProblemInstance.for_graph(kind, g.n, k, length)
    answer = "YES" if solve(instance, g, forest, config, runs) else "NO"
    report = RunReport.from_runs(answer, config, forest, g.n, runs)

    logger.info("Problem solved via MCP", problem=kind.value, answer=answer, runs=len(runs))
    return {
        "success": True,
        "problem": kind.value,
        "answer": answer,
        "forest_given": parents is not None,
        "stats": asdict(report),
    }


@register_tool
def elimination_forest(vertex_count: int, edges: list[list[int]]) -> dict[str, Any]:
    """
    Build the depth-first elimination forest of a graph.

    Args:
        vertex_count: Number of vertices n
        edges: Edge list [[u, v], ...]

    Returns:
        Parent array (-1 for roots) and forest depth
    """
    forest = build_dfs_forest(_graph_from(vertex_count, edges))
    return {"success": True, "parents": list(forest.parent), "depth": forest.depth}


@register_tool
def oracle_check(
    check: str,
    vertex_count: int,
    edges: list[list[int]],
    k: int | None = None,
    length: int | None = None,
    weight: int | None = None,
    weights: list[int] | None = None,
) -> dict[str, Any]:
    """
    Brute-force ground truth on desk-scale graphs.

    Args:
        check: "pcc" (decision), "cw" (cycle covers times cuts) or "mw" (matchings times cuts)
        vertex_count: Number of vertices n
        edges: Edge list [[u, v], ...]
        k: Cycle budget, for pcc
        length: Number of vertices covered / projected edges
        weight: Target total weight, for cw and mw
        weights: One weight per edge in edge order (default all 1)

    Returns:
        {"success": True, "check": ..., "result": bool or int}
    """
    g = _graph_from(vertex_count, edges)
    if length is None:
        raise ParameterValidationError("oracle checks require length")

    result: bool | int
    if check == "pcc":
        if k is None:
            raise ParameterValidationError("oracle pcc requires k")
        result = brute_pcc(g, k, length)
    elif check in ("cw", "mw"):
        if weight is None:
            raise ParameterValidationError(f"oracle {check} requires weight")
        if weights is None:
            weights = [1] * g.m
        if len(weights) != g.m:
            raise ParameterValidationError(
                f"got {len(weights)} weights for {g.m} edges",
                suggestions=["Give one weight per edge, in edge order"],
            )
        weight_map = dict(zip(g.edges, weights, strict=True))
        count = brute_count_Cw if check == "cw" else brute_count_Mw
        result = count(g, weight_map, weight, length)
    else:
        raise ParameterValidationError(
            f"unknown check {check!r}", suggestions=["Use one of: pcc, cw, mw"]
        )

    return {"success": True, "check": check, "result": result}


setup_tool_registration(server)


def main() -> None:
    """Run the MCP server on stdio until interrupted."""
    try:
        logger.info("Starting treedepth-cycles MCP Server", version=__version__, server_name=SERVER_NAME)
        server.run()
    except KeyboardInterrupt:
        logger.info(
            "treedepth-cycles MCP Server shutdown requested",
            reason="keyboard_interrupt",
            status="graceful_shutdown",
        )
        sys.exit(0)
    except Exception as e:
        logger.error(
            "Failed to start treedepth-cycles MCP Server",
            error=str(e),
            error_type=type(e).__name__,
        )
        sys.exit(1)


if __name__ == "__main__":
    main()
