"""
Tests for the inclusion-exclusion counter: factor polynomials, the two
mutually recursive procedures, instrumentation and space discipline.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treedepth_cycles.counter import (
    CountContext,
    Label,
    TailAssignment,
    caps_for,
    compute_exclusive,
    compute_inclusive,
    forest_poly,
    full_caps,
    leaf_poly,
    q_factor,
    r_factor,
)
from treedepth_cycles.graph import Graph
from treedepth_cycles.poly import CoefficientRing
from treedepth_cycles.treedepth import build_dfs_forest, validate_forest

from .graphs import chain_parents, complete, cycle, random_graph, star

INTEGERS = CoefficientRing.integers()


def make_context(g, parents, weights=None, caps=None, ring=INTEGERS):
    forest = validate_forest(g, parents)
    if weights is None:
        weights = dict.fromkeys(g.edges, 1)
    if caps is None:
        caps = full_caps(g, max(weights.values(), default=0))
    return CountContext.create(g, forest, weights, ring, caps)


def labels(ctx, mapping):
    return TailAssignment.from_labels(ctx.forest, mapping)


def as_terms(poly):
    return {(a, b, c): v for a, b, c, v in poly.terms()}


SINGLE = Graph.from_edges(1, [])
EDGE = Graph.from_edges(2, [(0, 1)])


class TestTailAssignment:
    """Test the label stack along a root-to-node path."""

    def test_push_must_extend_the_tail(self):
        """Test that push only accepts the next vertex on the tail."""
        forest = validate_forest(star(2), [-1, 0, 0])
        tail = TailAssignment(forest)
        with pytest.raises(ValueError):
            tail.push(1, Label.ZERO)
        tail.push(0, Label.TWO_L)
        tail.push(2, Label.ONE_R)
        assert tail.items() == [(0, Label.TWO_L), (2, Label.ONE_R)]

    def test_label_off_the_tail(self):
        """Test label lookup on and off the tail."""
        forest = validate_forest(star(2), [-1, 0, 0])
        tail = TailAssignment.from_labels(forest, {0: Label.ZERO, 2: Label.TWO_R})
        assert tail.label(2) is Label.TWO_R
        with pytest.raises(KeyError):
            tail.label(1)

    def test_label_properties(self):
        """Test copy counts and sides of the labels."""
        assert Label.ZERO.copies == 0
        assert Label.ZERO.side is None
        assert (Label.ONE_R.copies, Label.ONE_R.side) == (1, "R")
        assert (Label.TWO_L.copies, Label.TWO_L.side) == (2, "L")


class TestFactors:
    """Test the per-edge and per-vertex factor polynomials."""

    def test_q_both_two_same_side(self):
        """Test the edge factor with both endpoints fully covered on one side."""
        ctx = make_context(EDGE, [-1, 0], weights={(0, 1): 7})
        f = labels(ctx, {0: Label.TWO_L, 1: Label.TWO_L})
        assert as_terms(q_factor(ctx, (0, 1), f)) == {(0, 0, 0): 1, (7, 1, 1): 4}

    def test_q_one_and_two(self):
        """Test the edge factor with one single-copy endpoint."""
        ctx = make_context(EDGE, [-1, 0])
        f = labels(ctx, {0: Label.ONE_L, 1: Label.TWO_L})
        assert as_terms(q_factor(ctx, (0, 1), f)) == {(0, 0, 0): 1, (1, 1, 1): 2}

    def test_q_opposite_sides(self):
        """Test that an edge across the cut contributes only 1."""
        ctx = make_context(EDGE, [-1, 0])
        f = labels(ctx, {0: Label.TWO_L, 1: Label.TWO_R})
        assert as_terms(q_factor(ctx, (0, 1), f)) == {(0, 0, 0): 1}

    def test_q_zero_label(self):
        """Test that a Zero endpoint blocks the edge."""
        ctx = make_context(EDGE, [-1, 0])
        f = labels(ctx, {0: Label.ZERO, 1: Label.TWO_L})
        assert as_terms(q_factor(ctx, (0, 1), f)) == {(0, 0, 0): 1}

    @pytest.mark.parametrize(
        ("label", "expected"),
        [
            (Label.TWO_L, {(0, 0, 0): 1, (0, 1, 0): 1}),
            (Label.TWO_R, {(0, 0, 0): 1, (0, 1, 0): 1}),
            (Label.ZERO, {(0, 0, 0): 2}),
            (Label.ONE_L, {(0, 0, 0): 1}),
            (Label.ONE_R, {(0, 0, 0): 1}),
        ],
    )
    def test_r_factor(self, label, expected):
        """Test the vertex factor for each label."""
        ctx = make_context(SINGLE, [-1])
        assert as_terms(r_factor(ctx, 0, labels(ctx, {0: label}))) == expected


class TestLeafPoly:
    """Test leaf polynomials against hand-counted terms."""

    def test_single_vertex(self):
        """Test the leaf polynomial of a lone vertex."""
        ctx = make_context(SINGLE, [-1])
        poly = leaf_poly(ctx, 0, labels(ctx, {0: Label.TWO_L}))
        assert as_terms(poly) == {(0, 0, 0): 1, (0, 1, 0): 1}

    def test_single_edge(self):
        """Test the leaf polynomial of an edge charged at its lower end."""
        ctx = make_context(EDGE, [-1, 0])
        poly = leaf_poly(ctx, 1, labels(ctx, {0: Label.ONE_L, 1: Label.TWO_L}))
        assert as_terms(poly) == {
            (0, 0, 0): 1,
            (0, 1, 0): 1,
            (1, 1, 1): 2,
            (1, 2, 1): 2,
        }

    def test_star_leaf_without_the_center(self):
        """Test a star leaf whose center is labeled Zero."""
        ctx = make_context(star(2), [-1, 0, 0])
        poly = leaf_poly(ctx, 2, labels(ctx, {0: Label.ZERO, 2: Label.TWO_L}))
        assert as_terms(poly) == {(0, 0, 0): 1, (0, 1, 0): 1}

    def test_equals_product_of_factors(self):
        """Test that a K3 leaf polynomial is the product of all factors."""
        g = complete(3)
        ctx = make_context(g, chain_parents(3), weights={(0, 1): 1, (0, 2): 2, (1, 2): 3})
        f = labels(ctx, {0: Label.TWO_L, 1: Label.ONE_L, 2: Label.TWO_L})
        expected = ctx.one()
        for edge in g.edges:
            expected = expected * q_factor(ctx, edge, f)
        for x in range(3):
            expected = expected * r_factor(ctx, x, f)
        assert leaf_poly(ctx, 2, f) == expected


class TestRecursion:
    """Test the exclusive and inclusive procedures on tiny forests."""

    def test_exclusive_single_vertex(self):
        """Test the exclusive polynomial of a lone root."""
        ctx = make_context(SINGLE, [-1])
        poly = compute_exclusive(ctx, 0, TailAssignment(ctx.forest))
        assert as_terms(poly) == {(0, 1, 0): 2}

    def test_exclusive_star_child_under_zero(self):
        """Test an exclusive star leaf under a Zero center."""
        ctx = make_context(star(2), [-1, 0, 0])
        poly = compute_exclusive(ctx, 1, labels(ctx, {0: Label.ZERO}))
        assert as_terms(poly) == {(0, 1, 0): 4}

    def test_exclusive_star_child_under_two_with_zero_weights(self):
        """Test an exclusive star leaf under a Two center."""
        g = star(2)
        ctx = make_context(g, [-1, 0, 0], weights=dict.fromkeys(g.edges, 0))
        poly = compute_exclusive(ctx, 1, labels(ctx, {0: Label.TWO_L}))
        assert as_terms(poly) == {
            (0, 1, 0): 2,
            (0, 2, 0): 2,
            (0, 2, 1): 4,
            (0, 3, 1): 4,
        }

    def test_inclusive_leaf_delegates(self):
        """Test that the inclusive value of a leaf is its leaf polynomial."""
        ctx = make_context(SINGLE, [-1])
        poly = compute_inclusive(ctx, 0, labels(ctx, {0: Label.ZERO}))
        assert as_terms(poly) == {(0, 0, 0): 2}

    def test_inclusive_star_root(self):
        """Test the inclusive polynomial of a star center."""
        ctx = make_context(star(2), [-1, 0, 0])
        poly = compute_inclusive(ctx, 0, labels(ctx, {0: Label.ZERO}))
        assert as_terms(poly) == {(0, 2, 0): 8}

    def test_inclusive_with_one_child_is_that_child(self):
        """Test that a single child passes its exclusive value through."""
        ctx = make_context(EDGE, [-1, 0])
        f = labels(ctx, {0: Label.ZERO})
        assert compute_inclusive(ctx, 0, f) == compute_exclusive(ctx, 1, f)

    def test_wrong_tail_length(self):
        """Test that mismatched tails are rejected."""
        ctx = make_context(EDGE, [-1, 0])
        with pytest.raises(ValueError):
            compute_exclusive(ctx, 1, TailAssignment(ctx.forest))
        with pytest.raises(ValueError):
            compute_inclusive(ctx, 0, TailAssignment(ctx.forest))


class TestForestPoly:
    """Test the product over forest roots."""

    def test_single_vertex(self):
        """Test the forest polynomial of a lone vertex."""
        ctx = make_context(SINGLE, [-1])
        assert forest_poly(ctx).coeff(0, 1, 0) == 2

    def test_two_isolated_vertices(self):
        """Test that disconnected roots multiply."""
        g = Graph.from_edges(2, [])
        ctx = make_context(g, [-1, -1])
        assert as_terms(forest_poly(ctx)) == {(0, 2, 0): 4}

    def test_empty_graph_is_one(self):
        """Test that the empty graph gives the constant 1."""
        ctx = make_context(Graph.from_edges(0, []), [])
        assert as_terms(forest_poly(ctx)) == {(0, 0, 0): 1}

    def test_triangle_hamiltonian_count(self):
        """Test the Hamiltonian coefficient of the triangle."""
        g = complete(3)
        forest = build_dfs_forest(g)
        ctx = CountContext.create(
            g, forest, dict.fromkeys(g.edges, 1), INTEGERS, caps_for(3, 3, 1)
        )
        assert forest_poly(ctx).coeff(3, 3, 3) == 16

    def test_residue_ring_reduces_the_count(self):
        """Test that 16 vanishes modulo 8."""
        g = complete(3)
        forest = build_dfs_forest(g)
        ctx = CountContext.create(
            g, forest, dict.fromkeys(g.edges, 1),
            CoefficientRing.residues(3), caps_for(3, 3, 1),
        )
        assert forest_poly(ctx).coeff(3, 3, 3) == 0

    def test_any_forest_gives_the_same_polynomial(self):
        """Test that the polynomial does not depend on the forest."""
        g = cycle(4)
        dfs = make_context(g, list(build_dfs_forest(g).parent))
        other = make_context(g, [-1, 2, 0, 2])
        assert forest_poly(dfs) == forest_poly(other)

    def test_missing_weight(self):
        """Test that an unweighted edge is rejected."""
        with pytest.raises(ValueError, match="no weight"):
            make_context(EDGE, [-1, 0], weights={})


class TestInstrumentation:
    """Test call counters and live polynomial tracking."""

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_chain_call_counts(self, n):
        """Test exact call counts on chain forests."""
        ctx = make_context(complete(n), chain_parents(n))
        forest_poly(ctx)
        stats = ctx.stats
        assert stats.exclusive_calls == (5**n - 1) // 4
        assert stats.inclusive_calls == 5 * (5**n - 1) // 4
        assert stats.calls <= stats.bound == 2 * n * 5**n

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_chain_peak(self, n):
        """Test that chain forests keep at most d+2 polynomials live."""
        ctx = make_context(complete(n), chain_parents(n))
        forest_poly(ctx)
        assert ctx.stats.peak_polys <= n + 2
        assert ctx.stats.live_polys == 1

    @settings(max_examples=25, deadline=None)
    @given(
        n=st.integers(min_value=1, max_value=6),
        p=st.sampled_from([0.3, 0.6]),
        seed=st.integers(min_value=0, max_value=10_000),
    )
    def test_bounds_on_random_graphs(self, n, p, seed):
        """Test call and live polynomial bounds on random graphs."""
        g = random_graph(n, p, seed)
        forest = build_dfs_forest(g)
        ctx = make_context(g, list(forest.parent))
        forest_poly(ctx)
        stats = ctx.stats
        assert stats.calls <= stats.bound
        assert stats.peak_polys <= 2 * forest.depth + 1
        assert stats.live_polys == 1
