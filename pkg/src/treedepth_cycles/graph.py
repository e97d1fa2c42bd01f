"""
Simple undirected graphs: representation, parsing and elementary queries.

Vertex ids are dense 0-based integers. Edges are stored normalized with the
smaller endpoint first; the normalized pair is the edge identity used for
weights and for projections of auxiliary edges.
"""

from collections.abc import Iterable
from dataclasses import dataclass, field

import networkx as nx
import structlog

from .errors import GraphFormatError, ParameterValidationError

logger = structlog.get_logger(__name__)

Edge = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """
    Immutable simple undirected graph on vertices 0..n-1.

    Build instances with `Graph.from_edges`, which enforces the simple-graph
    invariants; the adjacency lists are derived and sorted ascending.
    """

    n: int
    edges: tuple[Edge, ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise ParameterValidationError(f"vertex count must be non-negative, got {n}")
        seen: set[Edge] = set()
        normalized: list[Edge] = []
        neighbors: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterValidationError(
                    f"edge {u} {v} has a vertex id outside 0..{n - 1}"
                )
            if u == v:
                raise ParameterValidationError(f"self-loop at vertex {u}")
            edge = normalize_edge(u, v)
            if edge in seen:
                raise ParameterValidationError(f"duplicate edge {edge[0]} {edge[1]}")
            seen.add(edge)
            normalized.append(edge)
            neighbors[u].append(v)
            neighbors[v].append(u)
        adjacency = tuple(tuple(sorted(nbrs)) for nbrs in neighbors)
        return cls(n=n, edges=tuple(normalized), adjacency=adjacency)

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> "Graph":
        """Relabel nodes to 0..n-1 in sorted order and copy the edges."""
        relabeled = nx.convert_node_labels_to_integers(nx_graph, ordering="sorted")
        return cls.from_edges(relabeled.number_of_nodes(), sorted(relabeled.edges()))

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edge_index(self) -> dict[Edge, int]:
        return {edge: i for i, edge in enumerate(self.edges)}

    def to_networkx(self) -> nx.Graph:
        """Edges are inserted in sorted order so neighbor iteration is ascending."""
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(sorted(self.edges))
        return nx_graph


@dataclass(frozen=True)
class VertexPartition:
    """Connected-component id per vertex; ids are numbered by smallest member."""

    component_id: tuple[int, ...]
    component_count: int


def parse_graph(text: bytes | str) -> Graph:
    """
    Parse the edge-list graph format.

    First line "n m", then exactly m lines "u v". Lines starting with 'c'
    are comments; blank lines are skipped.

    Raises:
        GraphFormatError: with the 1-based line number of the offending line
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as e:
            raise GraphFormatError(f"graph file is not ASCII text: {e}") from e

    header: tuple[int, int] | None = None
    edges: list[Edge] = []
    seen: set[Edge] = set()

    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise GraphFormatError(
                f"expected two integers, found {len(tokens)} tokens", line_number
            )
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(
                f"expected two integers, found {stripped!r}", line_number
            ) from None

        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("vertex and edge counts must be non-negative", line_number)
            header = (a, b)
            continue

        n, m = header
        if len(edges) == m:
            raise GraphFormatError(f"more than the declared {m} edges", line_number)
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(
                f"vertex id out of range 0..{n - 1}: {a} {b}", line_number
            )
        if a == b:
            raise GraphFormatError(f"self-loop at vertex {a}", line_number)
        edge = normalize_edge(a, b)
        if edge in seen:
            raise GraphFormatError(f"duplicate edge {edge[0]} {edge[1]}", line_number)
        seen.add(edge)
        edges.append(edge)

    if header is None:
        raise GraphFormatError("missing 'n m' header line")
    if len(edges) != header[1]:
        raise GraphFormatError(
            f"declared {header[1]} edges but found {len(edges)}"
        )

    graph = Graph.from_edges(header[0], edges)
    logger.debug("Parsed graph", n=graph.n, m=graph.m)
    return graph


def format_graph(g: Graph) -> str:
    """Serialize in the canonical edge-list format (inverse of parse_graph)."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def connected_components(g: Graph) -> VertexPartition:
    component_id = [0] * g.n
    components = sorted(nx.connected_components(g.to_networkx()), key=min)
    for index, members in enumerate(components):
        for v in members:
            component_id[v] = index
    return VertexPartition(tuple(component_id), len(components))


def add_edge(g: Graph, s: int, t: int) -> Graph:
    """
    Return a new graph with edge st appended; `g` is left unmodified.

    Raises:
        ParameterValidationError: if s == t or st is already an edge
    """
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ParameterValidationError(f"vertex id outside 0..{g.n - 1}: {s} {t}")
    if s == t:
        raise ParameterValidationError(f"cannot add self-loop at vertex {s}")
    if g.has_edge(s, t):
        raise ParameterValidationError(f"edge {s} {t} is already present")
    return Graph.from_edges(g.n, [*g.edges, (s, t)])
