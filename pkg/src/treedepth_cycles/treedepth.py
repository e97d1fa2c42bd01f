"""
Elimination forests and the per-leaf responsibility plan.

An elimination forest of a graph is a rooted forest on the same vertex set
in which every graph edge joins an ancestor-descendant pair. Children are
always ordered ascending by vertex id, which fixes the left-most leaf
left(v) of every subtree and therefore the leaf at which each vertex and
each edge is charged by the counter.
"""

from collections.abc import Sequence
from dataclasses import dataclass

import networkx as nx
import structlog

from .errors import ForestValidationError
from .graph import Edge, Graph

logger = structlog.get_logger(__name__)

ROOT = -1


@dataclass(frozen=True)
class EliminationForest:
    """
    Validated elimination forest.

    `level[v]` is the 0-based distance of v from its root, so the tail of v
    has exactly level[v] + 1 vertices and `depth` is max(level) + 1.
    """

    parent: tuple[int, ...]
    children: tuple[tuple[int, ...], ...]
    roots: tuple[int, ...]
    level: tuple[int, ...]
    depth: int

    @property
    def n(self) -> int:
        return len(self.parent)

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    def tail(self, v: int) -> list[int]:
        """Ancestors of v including v, ordered root first."""
        path = []
        while v != ROOT:
            path.append(v)
            v = self.parent[v]
        path.reverse()
        return path

    def subtree(self, v: int) -> list[int]:
        """Descendants of v including v, in preorder."""
        order = []
        stack = [v]
        while stack:
            x = stack.pop()
            order.append(x)
            stack.extend(reversed(self.children[x]))
        return order

    def is_ancestor(self, a: int, v: int) -> bool:
        """True iff a is an ancestor of v (a vertex is its own ancestor)."""
        while v != ROOT and self.level[v] > self.level[a]:
            v = self.parent[v]
        return v == a


@dataclass(frozen=True)
class LeafPlan:
    """
    Responsibility of each leaf.

    `owned_vertices[u]` is X_u = {x : left(x) = u} and `owned_edges[u]` is
    Z_u, the edges whose deeper endpoint y has left(y) = u. Both families
    partition their ground sets over the leaves.
    """

    left: tuple[int, ...]
    leaves: tuple[int, ...]
    owned_vertices: dict[int, tuple[int, ...]]
    owned_edges: dict[int, tuple[Edge, ...]]
    deeper_endpoint: dict[Edge, int]


def validate_forest(g: Graph, parents: Sequence[int]) -> EliminationForest:
    """
    Check that `parents` describes an elimination forest of `g`.

    Raises:
        ForestValidationError: on length mismatch, out-of-range or cyclic
            parent pointers, or an edge joining incomparable vertices
    """
    n = g.n
    if len(parents) != n:
        raise ForestValidationError(
            f"forest has {len(parents)} parent entries but the graph has {n} vertices"
        )
    for v, p in enumerate(parents):
        if p != ROOT and not 0 <= p < n:
            raise ForestValidationError(f"parent of vertex {v} is out of range: {p}")
        if p == v:
            raise ForestValidationError(f"vertex {v} is its own parent")

    level = [-1] * n
    for start in range(n):
        path = []
        on_path = set()
        v = start
        while v != ROOT and level[v] < 0:
            if v in on_path:
                raise ForestValidationError(
                    f"parent pointers contain a cycle through vertex {v}"
                )
            on_path.add(v)
            path.append(v)
            v = parents[v]
        base = -1 if v == ROOT else level[v]
        for offset, x in enumerate(reversed(path), start=1):
            level[x] = base + offset

    children: list[list[int]] = [[] for _ in range(n)]
    roots = []
    for v, p in enumerate(parents):
        if p == ROOT:
            roots.append(v)
        else:
            children[p].append(v)

    forest = EliminationForest(
        parent=tuple(parents),
        children=tuple(tuple(sorted(c)) for c in children),
        roots=tuple(roots),
        level=tuple(level),
        depth=max(level, default=-1) + 1,
    )

    for x, y in g.edges:
        if not (forest.is_ancestor(x, y) or forest.is_ancestor(y, x)):
            raise ForestValidationError(
                f"edge {x} {y} joins vertices that are not in ancestor-descendant relation",
                edge=(x, y),
            )

    return forest


def build_dfs_forest(g: Graph) -> EliminationForest:
    """
    Depth-first elimination forest, visiting vertices and neighbors ascending.

    Non-tree edges of a depth-first search of an undirected graph always join
    ancestor-descendant pairs, so the search tree is a valid forest.
    """
    predecessors = nx.dfs_predecessors(g.to_networkx())
    parents = [predecessors.get(v, ROOT) for v in range(g.n)]
    forest = validate_forest(g, parents)
    logger.debug("Built depth-first elimination forest", n=g.n, depth=forest.depth)
    return forest


def leaf_plan(g: Graph, t: EliminationForest) -> LeafPlan:
    left = list(range(t.n))
    for v in sorted(range(t.n), key=lambda x: t.level[x], reverse=True):
        if t.children[v]:
            left[v] = left[t.children[v][0]]

    leaves = tuple(v for v in range(t.n) if t.is_leaf(v))
    owned_vertices: dict[int, list[int]] = {u: [] for u in leaves}
    for x in range(t.n):
        owned_vertices[left[x]].append(x)

    owned_edges: dict[int, list[Edge]] = {u: [] for u in leaves}
    deeper_endpoint: dict[Edge, int] = {}
    for x, y in g.edges:
        deeper = y if t.level[y] > t.level[x] else x
        deeper_endpoint[(x, y)] = deeper
        owned_edges[left[deeper]].append((x, y))

    return LeafPlan(
        left=tuple(left),
        leaves=leaves,
        owned_vertices={u: tuple(xs) for u, xs in owned_vertices.items()},
        owned_edges={u: tuple(es) for u, es in owned_edges.items()},
        deeper_endpoint=deeper_endpoint,
    )


def augment_root(
    g: Graph, t: EliminationForest, s: int
) -> tuple[Graph, EliminationForest]:
    """
    Make `s` the unique root above every other vertex.

    `s` is extracted (its children are spliced onto its former parent, or
    become roots), then every remaining root is attached below `s`. All
    ancestor relations of `t` survive and the depth grows by at most one,
    so the result stays valid for `g` plus any edge incident to `s`.
    """
    parents = list(t.parent)
    for child in t.children[s]:
        parents[child] = t.parent[s]
    parents[s] = ROOT
    for v in range(t.n):
        if v != s and parents[v] == ROOT:
            parents[v] = s
    return g, validate_forest(g, parents)


def parse_forest(text: bytes | str, n: int | None = None) -> list[int]:
    """
    Parse the forest format: one line of parent ids, -1 marking roots.
    Blank lines and lines starting with 'c' are comments, as in graph files.

    The result is unvalidated; pass it to `validate_forest`.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as e:
            raise ForestValidationError(f"forest file is not ASCII text: {e}") from e
    lines = [line for line in text.splitlines() if line.strip() and not line.startswith("c")]
    if len(lines) > 1:
        raise ForestValidationError(f"forest file must be a single line, found {len(lines)}")
    tokens = lines[0].split() if lines else []
    try:
        parents = [int(token) for token in tokens]
    except ValueError as e:
        raise ForestValidationError(f"forest entries must be integers: {e}") from e
    if n is not None and len(parents) != n:
        raise ForestValidationError(
            f"forest has {len(parents)} parent entries but the graph has {n} vertices"
        )
    return parents


def format_forest(t: EliminationForest) -> str:
    return " ".join(str(p) for p in t.parent) + "\n"
