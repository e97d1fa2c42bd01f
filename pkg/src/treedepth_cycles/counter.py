"""
Count part: inclusion-exclusion branching over an elimination forest.

`compute_exclusive` branches the five labels of a vertex and combines them
as TwoL + TwoR - 2*OneL - 2*OneR + Zero; `compute_inclusive` multiplies the
exclusive values of the children, or evaluates the closed-form leaf
polynomial at a leaf. The recursion keeps one label per tail vertex on an
explicit stack and never memoizes, so memory stays polynomial: at any time
only the accumulators of the frames on the current root-to-leaf path are
alive.

Each vertex's private items (its copy edge and the free cut side when it is
labeled Zero) are charged at exactly one leaf, left(x); each graph edge is
charged at the leaf owning its deeper endpoint.
"""

import enum
from collections.abc import Mapping
from dataclasses import dataclass, field

import structlog

from .graph import Edge, Graph
from .poly import Caps, CoefficientRing, TruncatedPoly3
from .treedepth import EliminationForest, LeafPlan, leaf_plan

logger = structlog.get_logger(__name__)


class Label(enum.Enum):
    """Which copies of a vertex may be matched, and its side of the cut."""

    ZERO = (0, None)
    ONE_L = (1, "L")
    ONE_R = (1, "R")
    TWO_L = (2, "L")
    TWO_R = (2, "R")

    @property
    def copies(self) -> int:
        return self.value[0]

    @property
    def side(self) -> str | None:
        return self.value[1]


BRANCHES: tuple[tuple[Label, int], ...] = (
    (Label.ZERO, 1),
    (Label.ONE_L, -2),
    (Label.ONE_R, -2),
    (Label.TWO_L, 1),
    (Label.TWO_R, 1),
)


class TailAssignment:
    """Labels of the vertices on the current root-to-node path, indexed by depth."""

    __slots__ = ("_forest", "_labels", "_vertices")

    def __init__(self, forest: EliminationForest) -> None:
        self._forest = forest
        self._vertices: list[int] = []
        self._labels: list[Label] = []

    @classmethod
    def from_labels(
        cls, forest: EliminationForest, labels: Mapping[int, Label]
    ) -> "TailAssignment":
        """Build the assignment for a set of labeled vertices forming a tail."""
        tail = cls(forest)
        for v in sorted(labels, key=lambda x: forest.level[x]):
            tail.push(v, labels[v])
        return tail

    @property
    def depth(self) -> int:
        return len(self._vertices)

    def push(self, v: int, label: Label) -> None:
        expected_parent = self._vertices[-1] if self._vertices else -1
        if self._forest.parent[v] != expected_parent:
            raise ValueError(f"vertex {v} does not extend the current tail")
        self._vertices.append(v)
        self._labels.append(label)

    def pop(self) -> None:
        self._vertices.pop()
        self._labels.pop()

    def label(self, x: int) -> Label:
        level = self._forest.level[x]
        if level >= len(self._vertices) or self._vertices[level] != x:
            raise KeyError(f"vertex {x} is not on the current tail")
        return self._labels[level]

    def items(self) -> list[tuple[int, Label]]:
        return list(zip(self._vertices, self._labels, strict=True))


@dataclass
class CountStats:
    """Instrumentation of one forest evaluation."""

    n: int
    depth: int
    exclusive_calls: int = 0
    inclusive_calls: int = 0
    live_polys: int = 0
    peak_polys: int = 0

    @property
    def calls(self) -> int:
        return self.exclusive_calls + self.inclusive_calls

    @property
    def bound(self) -> int:
        return 2 * self.n * 5**self.depth


def caps_for(n: int, length: int, max_weight: int) -> Caps:
    """Caps that retain every coefficient read by the decision rule."""
    return Caps(alpha=max_weight * length, beta=n, gamma=length)


def full_caps(g: Graph, max_weight: int) -> Caps:
    """Caps large enough that no term of any node polynomial is truncated."""
    return Caps(alpha=max_weight * g.m, beta=g.n + g.m, gamma=g.m)


@dataclass
class CountContext:
    """
    Everything one recursion needs. Mutable (stats); use from one task at a time.

    Weights may be any non-negative integers here; the driver restricts
    them to 1..N.
    """

    graph: Graph
    forest: EliminationForest
    plan: LeafPlan
    weights: Mapping[Edge, int]
    ring: CoefficientRing
    caps: Caps
    stats: CountStats = field(init=False)

    def __post_init__(self) -> None:
        missing = [e for e in self.graph.edges if e not in self.weights]
        if missing:
            raise ValueError(f"no weight for edges {missing[:3]}")
        if any(self.weights[e] < 0 for e in self.graph.edges):
            raise ValueError("edge weights must be non-negative")
        self.stats = CountStats(n=self.graph.n, depth=self.forest.depth)

    @classmethod
    def create(
        cls,
        g: Graph,
        t: EliminationForest,
        weights: Mapping[Edge, int],
        ring: CoefficientRing,
        caps: Caps,
    ) -> "CountContext":
        return cls(g, t, leaf_plan(g, t), weights, ring, caps)

    def one(self) -> TruncatedPoly3:
        self._acquire()
        return TruncatedPoly3.constant(self.ring, self.caps, 1)

    def _acquire(self) -> None:
        stats = self.stats
        stats.live_polys += 1
        stats.peak_polys = max(stats.peak_polys, stats.live_polys)

    def _release(self) -> None:
        self.stats.live_polys -= 1


def _q_scalar(ctx: CountContext, edge: Edge, f: TailAssignment) -> int:
    x, y = edge
    fx, fy = f.label(x), f.label(y)
    if fx.side is None or fx.side != fy.side:
        return 0
    return fx.copies * fy.copies


def q_factor(ctx: CountContext, edge: Edge, f: TailAssignment) -> TruncatedPoly3:
    """1 + i*j*alpha^w*beta*gamma for same-side labels (i, j >= 1), else 1."""
    poly = TruncatedPoly3.constant(ctx.ring, ctx.caps, 1)
    return poly.mul_binomial_(_q_scalar(ctx, edge, f), ctx.weights[edge], 1, 1)


def r_factor(ctx: CountContext, x: int, f: TailAssignment) -> TruncatedPoly3:
    """1 + beta for Two labels, 2 for Zero, 1 for One labels."""
    label = f.label(x)
    poly = TruncatedPoly3.constant(ctx.ring, ctx.caps, 1)
    if label.copies == 2:
        return poly.mul_binomial_(1, 0, 1, 0)
    if label is Label.ZERO:
        return poly.scale_(2)
    return poly


def leaf_poly(ctx: CountContext, u: int, f: TailAssignment) -> TruncatedPoly3:
    """
    Product of q-factors over Z_u and r-factors over X_u.

    Factors are applied in place as binomial multiplications, so the leaf
    holds a single accumulator.
    """
    acc = ctx.one()
    for edge in ctx.plan.owned_edges[u]:
        scalar = _q_scalar(ctx, edge, f)
        if scalar:
            acc.mul_binomial_(scalar, ctx.weights[edge], 1, 1)
    for x in ctx.plan.owned_vertices[u]:
        label = f.label(x)
        if label.copies == 2:
            acc.mul_binomial_(1, 0, 1, 0)
        elif label is Label.ZERO:
            acc.scale_(2)
    return acc


def compute_exclusive(ctx: CountContext, u: int, f: TailAssignment) -> TruncatedPoly3:
    """Branch the label of u; `f` labels exactly the strict ancestors of u."""
    if f.depth != ctx.forest.level[u]:
        raise ValueError(f"exclusive call at {u} needs labels on its strict ancestors")
    ctx.stats.exclusive_calls += 1
    acc: TruncatedPoly3 | None = None
    for label, sign in BRANCHES:
        f.push(u, label)
        try:
            part = compute_inclusive(ctx, u, f)
        finally:
            f.pop()
        if acc is None:
            acc = part.scale_(sign)
        else:
            acc.add_scaled_(part, sign)
            ctx._release()
    assert acc is not None
    return acc


def compute_inclusive(ctx: CountContext, u: int, f: TailAssignment) -> TruncatedPoly3:
    """`f` labels exactly the ancestors of u, u included."""
    if f.depth != ctx.forest.level[u] + 1:
        raise ValueError(f"inclusive call at {u} needs labels on its ancestors and itself")
    ctx.stats.inclusive_calls += 1
    children = ctx.forest.children[u]
    if not children:
        return leaf_poly(ctx, u, f)
    product: TruncatedPoly3 | None = None
    for v in children:
        part = compute_exclusive(ctx, v, f)
        if product is None:
            product = part
        else:
            product.mul_(part)
            ctx._release()
    assert product is not None
    return product


def forest_poly(ctx: CountContext) -> TruncatedPoly3:
    """
    Product over the roots of the exclusive values with an empty tail.

    For every a, the coefficient at (a, n, l) is the number of pairs
    (simple perfect matching of the doubled graph, consistent cut) of
    weight a with l projected edges, reduced into the ring.
    """
    result: TruncatedPoly3 | None = None
    for root in ctx.forest.roots:
        part = compute_exclusive(ctx, root, TailAssignment(ctx.forest))
        if result is None:
            result = part
        else:
            result.mul_(part)
            ctx._release()
    if result is None:
        result = ctx.one()

    stats = ctx.stats
    logger.debug(
        "Forest polynomial computed",
        n=stats.n,
        depth=stats.depth,
        exclusive_calls=stats.exclusive_calls,
        inclusive_calls=stats.inclusive_calls,
        peak_polys=stats.peak_polys,
    )
    return result
