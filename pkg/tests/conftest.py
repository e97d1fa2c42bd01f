"""
Shared fixtures: small named graphs.
"""

import pytest

from treedepth_cycles.graph import Graph

from .graphs import complete, cycle, star, two_triangles


@pytest.fixture
def k3() -> Graph:
    return complete(3)


@pytest.fixture
def c4() -> Graph:
    return cycle(4)


@pytest.fixture
def c5() -> Graph:
    return cycle(5)


@pytest.fixture
def path3() -> Graph:
    """Path 0 - 1 - 2."""
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def star3() -> Graph:
    """Star K_{1,3}: center 0, leaves 1, 2, 3."""
    return star(3)


@pytest.fixture
def cherry() -> Graph:
    """Star with center 0 and leaves 1 and 2."""
    return star(2)


@pytest.fixture
def disjoint_triangles() -> Graph:
    return two_triangles()
