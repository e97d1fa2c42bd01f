"""
Brute-force ground truth for every counted quantity.

These functions enumerate objects straight from their definitions: partial
cycle covers, consistent cuts, simple perfect matchings of the doubled
graph, and the compatible (edge set, cut) pairs counted at a single node
of the elimination forest. They are deliberately naive and share nothing
with the counter beyond the data types. Instances beyond desk scale are
rejected with InstanceTooLargeError.
"""

import itertools
from collections import Counter
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from typing import Literal

import networkx as nx

from .counter import Label
from .errors import InstanceTooLargeError, ParameterValidationError
from .graph import Edge, Graph
from .poly import Caps, CoefficientRing, TruncatedPoly3
from .treedepth import EliminationForest, LeafPlan

MAX_COVER_VERTICES = 12
MAX_MATCHING_VERTICES = 8
MAX_NODE_VERTICES = 6

# Copy c of vertex x in the doubled graph has id 2 * x + c.
AuxVertex = int


@dataclass(frozen=True)
class AuxEdge:
    """An edge of the doubled graph; `base` is None for a copy edge x0-x1."""

    a: AuxVertex
    b: AuxVertex
    base: Edge | None


@dataclass(frozen=True)
class AuxGraph:
    base: Graph
    copy_edges: tuple[AuxEdge, ...]
    edge_copies: tuple[AuxEdge, ...]

    @property
    def vertex_count(self) -> int:
        return 2 * self.base.n

    @property
    def edges(self) -> tuple[AuxEdge, ...]:
        return self.copy_edges + self.edge_copies

    def weight(self, edge: AuxEdge, weights: Mapping[Edge, int]) -> int:
        return 0 if edge.base is None else weights[edge.base]


def aux_vertex(x: int, copy: int) -> AuxVertex:
    return 2 * x + copy


def build_aux_graph(g: Graph) -> AuxGraph:
    """Two adjacent copies per vertex; four copies per graph edge."""
    copy_edges = tuple(AuxEdge(aux_vertex(x, 0), aux_vertex(x, 1), None) for x in range(g.n))
    edge_copies = tuple(
        AuxEdge(aux_vertex(u, s), aux_vertex(v, t), (u, v))
        for u, v in g.edges
        for s in (0, 1)
        for t in (0, 1)
    )
    return AuxGraph(g, copy_edges, edge_copies)


def project(matching: Sequence[AuxEdge]) -> list[Edge]:
    """The graph edges underlying the edge copies of a set; copy edges are ignored."""
    return [e.base for e in matching if e.base is not None]


def _guard(g: Graph, limit: int, what: str) -> None:
    if g.n > limit:
        raise InstanceTooLargeError(
            f"{what} is limited to {limit} vertices, the graph has {g.n}"
        )


def cycle_count(cover: Sequence[Edge]) -> int:
    """Number of connected components spanned by an edge set."""
    return nx.number_connected_components(nx.Graph(list(cover))) if cover else 0


def is_partial_cycle_cover(g: Graph, edges: Sequence[Edge]) -> bool:
    degree = Counter(v for edge in edges for v in edge)
    return all(d == 2 for d in degree.values())


def partial_cycle_covers(g: Graph, length: int) -> Iterator[tuple[Edge, ...]]:
    """Every edge set with `length` edges whose degrees all lie in {0, 2}."""
    _guard(g, MAX_COVER_VERTICES, "cycle cover enumeration")
    for subset in itertools.combinations(g.edges, length):
        if is_partial_cycle_cover(g, subset):
            yield subset


def consistent_cut_count(g: Graph, edges: Sequence[Edge]) -> int:
    """Number of ordered bipartitions of V that no edge of `edges` crosses."""
    return sum(
        1
        for sides in itertools.product((0, 1), repeat=g.n)
        if all(sides[u] == sides[v] for u, v in edges)
    )


def brute_pcc(g: Graph, k: int, length: int) -> bool:
    """At most k vertex-disjoint cycles visiting exactly `length` vertices."""
    if k < 0 or length < 0:
        raise ParameterValidationError("k and length must be non-negative")
    return any(cycle_count(f) <= k for f in partial_cycle_covers(g, length))


def brute_long_path(g: Graph, length: int) -> bool:
    """A simple path on exactly `length` vertices, by permutation search."""
    _guard(g, MAX_COVER_VERTICES, "path enumeration")
    if length <= 1:
        return length == 0 or g.n >= 1
    return any(
        all(g.has_edge(p[i], p[i + 1]) for i in range(length - 1))
        for p in itertools.permutations(range(g.n), length)
        if p[0] < p[-1]
    )


def _cover_weight(cover: Sequence[Edge], weights: Mapping[Edge, int]) -> int:
    return sum(weights[e] for e in cover)


def brute_count_Cw(
    g: Graph, weights: Mapping[Edge, int], w: int, length: int
) -> int:
    """|C_w|: relaxed solutions of weight w paired with every consistent cut."""
    return sum(
        consistent_cut_count(g, cover)
        for cover in partial_cycle_covers(g, length)
        if _cover_weight(cover, weights) == w
    )


def brute_count_Sw(
    g: Graph, weights: Mapping[Edge, int], w: int, k: int, length: int
) -> int:
    """Number of genuine solutions (at most k cycles) of weight w."""
    return sum(
        1
        for cover in partial_cycle_covers(g, length)
        if _cover_weight(cover, weights) == w and cycle_count(cover) <= k
    )


def simple_perfect_matchings(aux: AuxGraph) -> Iterator[tuple[AuxEdge, ...]]:
    """
    Perfect matchings of the doubled graph using at most one copy of any
    graph edge. Recurses on the lowest unmatched vertex.
    """
    _guard(aux.base, MAX_MATCHING_VERTICES, "matching enumeration")
    incident: list[list[AuxEdge]] = [[] for _ in range(aux.vertex_count)]
    for edge in aux.edges:
        incident[edge.a].append(edge)
        incident[edge.b].append(edge)

    matched = [False] * aux.vertex_count
    used_bases: set[Edge] = set()
    chosen: list[AuxEdge] = []

    def extend(start: int) -> Iterator[tuple[AuxEdge, ...]]:
        vertex = next((v for v in range(start, aux.vertex_count) if not matched[v]), None)
        if vertex is None:
            yield tuple(chosen)
            return
        for edge in incident[vertex]:
            other = edge.b if edge.a == vertex else edge.a
            if matched[other] or (edge.base is not None and edge.base in used_bases):
                continue
            matched[vertex] = matched[other] = True
            if edge.base is not None:
                used_bases.add(edge.base)
            chosen.append(edge)
            yield from extend(vertex + 1)
            chosen.pop()
            if edge.base is not None:
                used_bases.discard(edge.base)
            matched[vertex] = matched[other] = False

    yield from extend(0)


def matching_projections(aux: AuxGraph) -> Counter[tuple[Edge, ...]]:
    """
    Number of simple perfect matchings per projected edge set, keyed by the
    sorted projection. A single pass over the matchings; reuse the result
    across weight maps.
    """
    return Counter(tuple(sorted(project(m))) for m in simple_perfect_matchings(aux))


def matchings_projecting_to(aux: AuxGraph, cover: Sequence[Edge]) -> int:
    """Number of simple perfect matchings whose projection is exactly `cover`."""
    return matching_projections(aux)[tuple(sorted(cover))]


def brute_Mw_table(
    g: Graph,
    weights: Mapping[Edge, int],
    projections: Counter[tuple[Edge, ...]] | None = None,
) -> Counter[tuple[int, int]]:
    """
    |M_w| for every (weight, length) at once.

    Copy edges weigh nothing, so a matching weighs what its projection
    weighs, and the consistent cuts depend on the projection alone. Each
    projection therefore contributes matchings x cuts to one bucket.

    Args:
        g: Base graph
        weights: Edge weights
        projections: Result of `matching_projections`, computed when omitted

    Returns:
        Counter keyed by (weight, number of edge copies)
    """
    if projections is None:
        projections = matching_projections(build_aux_graph(g))
    table: Counter[tuple[int, int]] = Counter()
    for cover, matchings in projections.items():
        key = (_cover_weight(cover, weights), len(cover))
        table[key] += matchings * consistent_cut_count(g, cover)
    return table


def brute_count_Mw(
    g: Graph, weights: Mapping[Edge, int], w: int, length: int
) -> int:
    """|M_w|: simple perfect matchings of weight w with `length` edge copies, times consistent cuts."""
    return brute_Mw_table(g, weights)[(w, length)]


def brute_node_poly(
    g: Graph,
    t: EliminationForest,
    plan: LeafPlan,
    u: int,
    f: Mapping[int, Label],
    mode: Literal["inclusive", "exclusive"],
    weights: Mapping[Edge, int],
    caps: Caps | None = None,
    only_copy: int = 0,
) -> TruncatedPoly3:
    """
    Sum of alpha^w(F) beta^|F| gamma^|F cap E1| over compatible pairs at u.

    A compatible pair is an edge set F inside the sheaf of u (copies of the
    edges charged at leaves of subtree[u], plus copy edges of vertices whose
    left-most leaf lies there) and a side assignment such that:
      - at most one copy of each graph edge is used and no used copy
        crosses sides;
      - every copy of every free vertex (strict descendants when inclusive,
        subtree[u] when exclusive) is covered by F;
      - a tail vertex labeled Zero is untouched and has a free side only
        when its left-most leaf lies in subtree[u]; One labels allow only
        copy `only_copy` and fix the side; Two labels allow both copies
        and fix the side.
    """
    _guard(g, MAX_NODE_VERTICES, "node-level enumeration")
    tail = t.tail(u) if mode == "inclusive" else t.tail(u)[:-1]
    if set(f) != set(tail):
        raise ParameterValidationError(
            f"labels must cover exactly the {'ancestors' if mode == 'inclusive' else 'strict ancestors'} of {u}"
        )
    subtree = t.subtree(u)
    free = [x for x in subtree if x != u] if mode == "inclusive" else subtree
    leaves = {w for w in subtree if t.is_leaf(w)}

    if caps is None:
        max_weight = max((weights[e] for e in g.edges), default=0)
        caps = Caps(max_weight * g.m, g.n + g.m, g.m)

    sheaf_edges = [e for w in sorted(leaves) for e in plan.owned_edges[w]]
    sheaf_vertices = [x for x in range(g.n) if plan.left[x] in leaves]

    def allowed_copies(x: int) -> tuple[int, ...]:
        if x not in f:
            return (0, 1)
        copies = f[x].copies
        if copies == 2:
            return (0, 1)
        return (only_copy,) if copies == 1 else ()

    owned_zero = sum(1 for y in tail if f[y] is Label.ZERO and plan.left[y] in leaves)
    terms: Counter[tuple[int, int, int]] = Counter()

    for free_sides in itertools.product("LR", repeat=len(free)):
        side = {y: f[y].side for y in tail}
        side.update(zip(free, free_sides, strict=True))

        # choices per item: (covered aux vertices, weight, counts as edge copy)
        items: list[list[tuple[tuple[int, ...], int, int]]] = []
        for x, y in sheaf_edges:
            options = [((), 0, 0)]
            if side[x] is not None and side[x] == side[y]:
                options += [
                    ((aux_vertex(x, s), aux_vertex(y, r)), weights[(x, y)], 1)
                    for s in allowed_copies(x)
                    for r in allowed_copies(y)
                ]
            items.append(options)
        for x in sheaf_vertices:
            options = [((), 0, 0)]
            if x not in f or f[x].copies == 2:
                options.append(((aux_vertex(x, 0), aux_vertex(x, 1)), 0, 0))
            items.append(options)

        required = {aux_vertex(x, c) for x in free for c in (0, 1)}
        for degrees, count in _covering_choices(items, required).items():
            terms[degrees] += count << owned_zero

    return TruncatedPoly3.from_terms(CoefficientRing.integers(), caps, terms)


def _covering_choices(
    items: list[list[tuple[tuple[int, ...], int, int]]], required: set[int]
) -> Counter[tuple[int, int, int]]:
    """
    Count one-option-per-item selections covering every required vertex,
    grouped by (weight, selected edges, selected edge copies). A branch is
    cut as soon as it passes the last item able to cover a required vertex.
    """
    last: dict[int, int] = {}
    for index, options in enumerate(items):
        for vertices, _, _ in options:
            for v in vertices:
                last[v] = index
    terms: Counter[tuple[int, int, int]] = Counter()
    if not required <= last.keys():
        return terms

    due: list[list[int]] = [[] for _ in items]
    for v in required:
        due[last[v]].append(v)
    cover: Counter[int] = Counter()

    def walk(index: int, a: int, b: int, c: int) -> None:
        if index == len(items):
            terms[(a, b, c)] += 1
            return
        for vertices, weight, copy in items[index]:
            cover.update(vertices)
            if all(cover[v] for v in due[index]):
                walk(index + 1, a + weight, b + (1 if vertices else 0), c + copy)
            cover.subtract(vertices)

    walk(0, 0, 0, 0)
    return terms
