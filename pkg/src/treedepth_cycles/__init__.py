"""
treedepth-cycles

Randomized Cut&Count solver for Hamiltonian Cycle, Hamiltonian Path, Long
Cycle, Long Path, Min Cycle Cover and Partial Cycle Cover on graphs given
with an elimination forest of depth d. Runs in time 5^d * poly(n) and
polynomial space; YES answers are always correct.
"""

__version__ = "0.1.0"

from .driver import (
    ProblemInstance,
    ProblemKind,
    SolveConfig,
    count_cycle_covers,
    decide_pcc,
    longest_cycle,
    longest_path,
    min_cycle_cover,
    solve,
)
from .graph import Graph, parse_graph
from .treedepth import EliminationForest, build_dfs_forest, validate_forest

__all__ = [
    "EliminationForest",
    "Graph",
    "ProblemInstance",
    "ProblemKind",
    "SolveConfig",
    "__version__",
    "build_dfs_forest",
    "count_cycle_covers",
    "decide_pcc",
    "longest_cycle",
    "longest_path",
    "min_cycle_cover",
    "parse_graph",
    "solve",
    "validate_forest",
]
