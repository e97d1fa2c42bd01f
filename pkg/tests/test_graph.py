"""
Tests for graph representation, parsing and elementary queries.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treedepth_cycles.errors import GraphFormatError, ParameterValidationError
from treedepth_cycles.graph import (
    Graph,
    add_edge,
    connected_components,
    format_graph,
    parse_graph,
)

from .graphs import complete, two_triangles


class TestParseGraph:
    """Reading the edge-list format."""

    def test_triangle(self):
        """Test parsing a triangle."""
        g = parse_graph("3 3\n0 1\n1 2\n2 0\n")
        assert g.n == 3
        assert g.m == 3
        assert g.edges == ((0, 1), (1, 2), (0, 2))

    def test_isolated_vertices(self):
        """Test a header with no edges."""
        g = parse_graph("2 0\n")
        assert (g.n, g.m) == (2, 0)

    def test_bytes_input(self):
        """Test that ASCII bytes are accepted."""
        assert parse_graph(b"2 1\n0 1\n").edges == ((0, 1),)

    def test_comments_and_blank_lines_are_skipped(self):
        """Test that comment and blank lines are ignored."""
        g = parse_graph("c a triangle\n3 3\n\n0 1\nc middle\n1 2\n2 0\n")
        assert g.m == 3

    @pytest.mark.parametrize(
        ("text", "line", "fragment"),
        [
            ("2 1\n0 0\n", 2, "self-loop"),
            ("3 2\n0 1\n1 0\n", 3, "duplicate"),
            ("3 1\n0 5\n", 2, "out of range"),
            ("3 1\n0 x\n", 2, "two integers"),
            ("3 1\n0 1 2\n", 2, "3 tokens"),
            ("3 1\n0 1\n1 2\n", 3, "more than"),
            ("-1 0\n", 1, "non-negative"),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line, fragment):
        """Test that each format error names its line."""
        with pytest.raises(GraphFormatError) as exc_info:
            parse_graph(text)
        assert exc_info.value.line_number == line
        assert str(exc_info.value).startswith(f"line {line}: ")
        assert fragment in str(exc_info.value)

    def test_missing_header(self):
        """Test a file with only comments."""
        with pytest.raises(GraphFormatError, match="header"):
            parse_graph("c nothing here\n")

    def test_too_few_edges(self):
        """Test a file with fewer edges than declared."""
        with pytest.raises(GraphFormatError, match="declared 2 edges but found 1"):
            parse_graph("3 2\n0 1\n")

    def test_non_ascii_bytes(self):
        """Test that non-ASCII bytes are rejected."""
        with pytest.raises(GraphFormatError, match="ASCII"):
            parse_graph("3 0\nc café\n".encode())

    def test_format_error_is_a_validation_error(self):
        """Test that format errors are validation errors, so the CLI exits 2."""
        with pytest.raises(ParameterValidationError):
            parse_graph("1 1\n0 0\n")


def test_format_round_trips_canonical_input():
    """Test that formatting reproduces canonical input."""
    text = "4 3\n0 1\n1 2\n0 3\n"
    assert format_graph(parse_graph(text)) == text


class TestGraph:
    """The Graph value type."""

    def test_edges_are_normalized(self):
        """Test that edges are stored with the smaller endpoint first."""
        g = Graph.from_edges(3, [(2, 0), (1, 0)])
        assert g.edges == ((0, 2), (0, 1))
        assert g.adjacency[0] == (1, 2)

    def test_has_edge_is_symmetric(self):
        """Test edge lookup in both directions."""
        g = Graph.from_edges(3, [(0, 2)])
        assert g.has_edge(0, 2)
        assert g.has_edge(2, 0)
        assert not g.has_edge(0, 1)

    @pytest.mark.parametrize(
        "edges", [[(0, 0)], [(0, 3)], [(0, 1), (1, 0)]], ids=["loop", "range", "dup"]
    )
    def test_from_edges_rejects_non_simple_input(self, edges):
        """Test that loops, bad endpoints and duplicates are rejected."""
        with pytest.raises(ParameterValidationError):
            Graph.from_edges(3, edges)

    def test_networkx_round_trip(self):
        """Test conversion to and from networkx."""
        g = complete(4)
        assert g.m == 6
        assert Graph.from_networkx(g.to_networkx()) == g

    def test_edge_index(self, k3):
        """Test the edge index map."""
        assert k3.edge_index() == {(0, 1): 0, (0, 2): 1, (1, 2): 2}


class TestConnectedComponents:
    """Test component labeling."""

    def test_triangle(self, k3):
        """Test that a triangle is one component."""
        assert connected_components(k3).component_count == 1

    def test_two_triangles(self):
        """Test component ids of two triangles."""
        partition = connected_components(two_triangles())
        assert partition.component_count == 2
        assert partition.component_id == (0, 0, 0, 1, 1, 1)

    def test_edgeless(self):
        """Test that every isolated vertex is its own component."""
        partition = connected_components(Graph.from_edges(3, []))
        assert partition.component_count == 3
        assert partition.component_id == (0, 1, 2)

    @settings(max_examples=50, deadline=None)
    @given(
        n=st.integers(min_value=2, max_value=50),
        data=st.data(),
    )
    def test_count_matches_union_find(self, n, data):
        """Test component counts against union-find."""
        pairs = data.draw(
            st.sets(
                st.tuples(
                    st.integers(0, n - 1), st.integers(0, n - 1)
                ).filter(lambda e: e[0] < e[1]),
                max_size=3 * n,
            )
        )
        g = Graph.from_edges(n, sorted(pairs))

        root = list(range(n))

        def find(x):
            while root[x] != x:
                root[x] = root[root[x]]
                x = root[x]
            return x

        merges = 0
        for u, v in g.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                root[ru] = rv
                merges += 1

        assert connected_components(g).component_count == n - merges


class TestAddEdge:
    """Test adding one edge to a graph."""

    def test_path_becomes_triangle(self, path3):
        """Test closing a path into a triangle without mutating it."""
        triangle = add_edge(path3, 0, 2)
        assert triangle.m == 3
        assert triangle.n == 3
        assert path3.m == 2

    def test_edgeless_pair(self):
        """Test adding the only edge."""
        g = add_edge(Graph.from_edges(2, []), 0, 1)
        assert g.edges == ((0, 1),)

    def test_duplicate_is_rejected(self, k3):
        """Test that an existing edge is rejected."""
        with pytest.raises(ParameterValidationError, match="already present"):
            add_edge(k3, 0, 1)

    def test_self_loop_is_rejected(self, path3):
        """Test that a self-loop is rejected."""
        with pytest.raises(ParameterValidationError, match="self-loop"):
            add_edge(path3, 1, 1)
