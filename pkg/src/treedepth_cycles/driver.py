"""
Cut part and problem layer.

A Partial Cycle Cover instance (k, l) is decided by sampling edge weights
in 1..2m, computing the forest polynomial modulo 2**(n+k+1) and checking
whether any coefficient at (a, n, l) survives. Every relaxed solution F of
weight a contributes 2**(n + cc(F)) to that coefficient, so relaxed
solutions with more than k cycles vanish, while an isolated genuine
solution survives. Answers are one-sided: YES is always correct, NO is
wrong with probability at most 1/2 per run.

The remaining problems reduce to Partial Cycle Cover; Long Path adds an
edge between every non-adjacent pair in turn.
"""

import enum
import math
import time
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, replace

import numpy as np
import structlog

from .counter import CountContext, caps_for, forest_poly
from .errors import ParameterValidationError
from .graph import Edge, Graph, add_edge
from .poly import CoefficientRing
from .treedepth import EliminationForest, augment_root, build_dfs_forest, validate_forest

logger = structlog.get_logger(__name__)

_SEED_LIMIT = 1 << 64


class ProblemKind(enum.StrEnum):
    HAM_CYCLE = "hamcycle"
    HAM_PATH = "hampath"
    LONG_CYCLE = "longcycle"
    LONG_PATH = "longpath"
    MIN_CYCLE_COVER = "mincyclecover"
    PARTIAL_CYCLE_COVER = "pcc"


@dataclass(frozen=True)
class ProblemInstance:
    """
    A problem kind with its cycle budget k and length target l.

    Use `for_graph` to fill the parameters each kind implies (for example
    Hamiltonian Cycle is k = 1, l = n).
    """

    kind: ProblemKind
    k: int | None = None
    length: int | None = None

    @classmethod
    def for_graph(
        cls, kind: ProblemKind, n: int, k: int | None = None, length: int | None = None
    ) -> "ProblemInstance":
        match kind:
            case ProblemKind.HAM_CYCLE:
                k, length = 1, n
            case ProblemKind.HAM_PATH:
                k, length = None, n
            case ProblemKind.LONG_CYCLE:
                k = 1
                _require(length, "length", kind)
            case ProblemKind.LONG_PATH:
                k = None
                _require(length, "length", kind)
            case ProblemKind.MIN_CYCLE_COVER:
                length = n
                _require(k, "k", kind)
            case ProblemKind.PARTIAL_CYCLE_COVER:
                _require(k, "k", kind)
                _require(length, "length", kind)
        for name, value in (("k", k), ("length", length)):
            if value is not None and value < 0:
                raise ParameterValidationError(f"{name} must be non-negative, got {value}")
        return cls(kind=kind, k=k, length=length)


def _require(value: int | None, name: str, kind: ProblemKind) -> None:
    if value is None:
        flag = "-k" if name == "k" else "-l"
        raise ParameterValidationError(
            f"problem {kind.value} requires {name}", suggestions=[f"Pass {flag} INT"]
        )


@dataclass(frozen=True)
class SolveConfig:
    """Seed and repetition count; false negatives have probability <= 2**-repetitions."""

    seed: int = 0
    repetitions: int = 20
    stats: bool = False

    def __post_init__(self) -> None:
        if not 0 <= self.seed < _SEED_LIMIT:
            raise ParameterValidationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.repetitions < 1:
            raise ParameterValidationError(
                f"repetitions must be at least 1, got {self.repetitions}"
            )


@dataclass(frozen=True)
class WeightFn:
    """Edge weights in 1..N."""

    weights: Mapping[Edge, int]
    N: int

    def __post_init__(self) -> None:
        bad = [e for e, w in self.weights.items() if not 1 <= w <= self.N]
        if bad:
            raise ParameterValidationError(f"weights outside 1..{self.N} on edges {bad[:3]}")


@dataclass(frozen=True)
class RunStats:
    """Instrumentation of one decision run."""

    n: int
    depth: int
    exclusive_calls: int
    inclusive_calls: int
    peak_polys: int
    elapsed_ms: float
    answer: bool

    @property
    def calls(self) -> int:
        return self.exclusive_calls + self.inclusive_calls

    @property
    def bound(self) -> int:
        return 2 * self.n * 5**self.depth


def run_rng(seed: int, *stream: int) -> np.random.Generator:
    """Independent, reproducible generator for (seed, stream...)."""
    return np.random.default_rng([seed, *stream])


def sample_weights(g: Graph, rng: np.random.Generator) -> WeightFn:
    """Independent uniform weights in 1..2m, one per edge in edge order."""
    if g.m == 0:
        raise ParameterValidationError("cannot sample weights for a graph without edges")
    big_n = 2 * g.m
    values = rng.integers(1, big_n, size=g.m, endpoint=True)
    return WeightFn({edge: int(w) for edge, w in zip(g.edges, values, strict=True)}, big_n)


def decide_pcc_once(
    g: Graph,
    t: EliminationForest,
    k: int,
    length: int,
    weights: WeightFn,
    stats: list[RunStats] | None = None,
) -> bool:
    """
    One Cut&Count run for fixed weights. Never a false positive.

    Raises:
        ParameterValidationError: unless 3 <= length <= n and k >= 1
    """
    n = g.n
    if not 3 <= length <= n:
        raise ParameterValidationError(f"length must lie in 3..{n}, got {length}")
    if k < 1:
        raise ParameterValidationError(f"k must be at least 1, got {k}")

    ring = CoefficientRing.residues(n + k + 1)
    ctx = CountContext.create(
        g, t, weights.weights, ring, caps_for(n, length, weights.N)
    )

    started = time.perf_counter()
    poly = forest_poly(ctx)
    answer = bool(np.any(poly.coeffs[length:, n, length] != 0))
    elapsed_ms = (time.perf_counter() - started) * 1000.0

    run = RunStats(
        n=n,
        depth=t.depth,
        exclusive_calls=ctx.stats.exclusive_calls,
        inclusive_calls=ctx.stats.inclusive_calls,
        peak_polys=ctx.stats.peak_polys,
        elapsed_ms=elapsed_ms,
        answer=answer,
    )
    if stats is not None:
        stats.append(run)
    logger.info(
        "Decision run finished",
        n=n,
        k=k,
        length=length,
        depth=t.depth,
        answer=answer,
        calls=run.calls,
        bound=run.bound,
        elapsed_ms=round(elapsed_ms, 3),
    )
    return answer


def decide_pcc(
    g: Graph,
    t: EliminationForest,
    k: int,
    length: int,
    config: SolveConfig,
    stats: list[RunStats] | None = None,
    stream: tuple[int, ...] = (),
) -> bool:
    """
    Partial Cycle Cover: at most k vertex-disjoint cycles visiting exactly
    `length` vertices. OR of `config.repetitions` independent runs; run i
    draws its weights from (seed, *stream, i).
    """
    if k < 0 or length < 0:
        raise ParameterValidationError(f"k and length must be non-negative, got {k}, {length}")
    if length == 0:
        return True
    if length < 3 or length > g.n or k == 0 or g.m == 0:
        return False

    for run in range(config.repetitions):
        weights = sample_weights(g, run_rng(config.seed, *stream, run))
        if decide_pcc_once(g, t, k, length, weights, stats):
            return True
    return False


def _resolve_forest(
    g: Graph, t: EliminationForest | Sequence[int] | None
) -> EliminationForest:
    if t is None:
        return build_dfs_forest(g)
    parents = t.parent if isinstance(t, EliminationForest) else t
    return validate_forest(g, parents)


def _long_path(
    g: Graph,
    t: EliminationForest,
    length: int,
    config: SolveConfig,
    stats: list[RunStats] | None,
) -> bool:
    if length == 0:
        return True
    if length == 1:
        return g.n >= 1
    if length == 2:
        return g.m >= 1
    if length > g.n:
        return False

    pairs = [
        (s, v) for s in range(g.n) for v in range(s + 1, g.n) if not g.has_edge(s, v)
    ]
    sub_calls = 1 + len(pairs)
    sub_config = replace(
        config,
        repetitions=math.ceil(math.log2(2 * sub_calls)) + config.repetitions,
    )
    logger.debug(
        "Long path reduction", length=length, sub_calls=sub_calls,
        repetitions=sub_config.repetitions,
    )

    if decide_pcc(g, t, 1, length, sub_config, stats, stream=(0,)):
        return True
    for index, (s, v) in enumerate(pairs, start=1):
        augmented = add_edge(g, s, v)
        _, rooted = augment_root(g, t, s)
        rooted = validate_forest(augmented, rooted.parent)
        if decide_pcc(augmented, rooted, 1, length, sub_config, stats, stream=(index,)):
            return True
    return False


def solve(
    instance: ProblemInstance,
    g: Graph,
    t: EliminationForest | Sequence[int] | None,
    config: SolveConfig,
    stats: list[RunStats] | None = None,
) -> bool:
    """
    Decide any supported problem. Never a false positive.

    Args:
        instance: Problem kind and parameters (see ProblemInstance.for_graph)
        g: Input graph
        t: Elimination forest or parent array; a DFS forest when None
        config: Seed and repetitions
        stats: Optional list receiving one RunStats per decision run

    Raises:
        ForestValidationError: if `t` is not an elimination forest of `g`
        ParameterValidationError: on missing or negative parameters
    """
    instance = ProblemInstance.for_graph(instance.kind, g.n, instance.k, instance.length)
    forest = _resolve_forest(g, t)
    k, length = instance.k, instance.length
    assert length is not None

    match instance.kind:
        case ProblemKind.HAM_PATH | ProblemKind.LONG_PATH:
            answer = _long_path(g, forest, length, config, stats)
        case _:
            assert k is not None
            answer = decide_pcc(g, forest, k, length, config, stats)

    logger.info(
        "Problem solved",
        problem=instance.kind.value,
        k=k,
        length=length,
        n=g.n,
        m=g.m,
        depth=forest.depth,
        answer=answer,
    )
    return answer


def longest_cycle(
    g: Graph, t: EliminationForest | Sequence[int] | None, config: SolveConfig
) -> int:
    """Largest l with a YES for Long Cycle, 0 if none (a lower bound w.h.p. exact)."""
    forest = _resolve_forest(g, t)
    for length in range(g.n, 2, -1):
        if decide_pcc(g, forest, 1, length, config, stream=(length,)):
            return length
    return 0


def longest_path(
    g: Graph, t: EliminationForest | Sequence[int] | None, config: SolveConfig
) -> int:
    """Largest number of vertices on a path found, 0 for the empty graph."""
    forest = _resolve_forest(g, t)
    for length in range(g.n, 0, -1):
        if _long_path(g, forest, length, config, None):
            return length
    return 0


def min_cycle_cover(
    g: Graph, t: EliminationForest | Sequence[int] | None, config: SolveConfig
) -> int | None:
    """Smallest k for which Min Cycle Cover answers YES, or None."""
    forest = _resolve_forest(g, t)
    if g.n == 0:
        return 0
    for k in range(1, g.n // 3 + 1):
        if decide_pcc(g, forest, k, g.n, config, stream=(k,)):
            return k
    return None


def count_cycle_covers(
    g: Graph,
    t: EliminationForest | Sequence[int] | None,
    length: int,
    weights: Mapping[Edge, int],
) -> dict[int, int]:
    """
    Exact number of (partial cycle cover on `length` vertices, consistent
    cut) pairs of every weight, computed by the counter in exact arithmetic.
    Only nonzero counts are returned.
    """
    if not 0 <= length <= g.n:
        raise ParameterValidationError(f"length must lie in 0..{g.n}, got {length}")
    forest = _resolve_forest(g, t)
    max_weight = max((weights[e] for e in g.edges), default=0)
    ctx = CountContext.create(
        g, forest, weights, CoefficientRing.integers(), caps_for(g.n, length, max_weight)
    )
    poly = forest_poly(ctx)
    counts = {}
    for a in range(max_weight * length + 1):
        matchings = poly.coeff(a, g.n, length)
        if matchings:
            counts[a] = matchings >> length
    return counts
