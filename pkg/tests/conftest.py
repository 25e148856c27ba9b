"""
Shared fixtures for the test suite.
"""
import pytest

from src.graphs.graph import Graph
from src.percolation.engine import ProcessParams


@pytest.fixture
def k4():
    return ProcessParams(4)


@pytest.fixture
def k3():
    return ProcessParams(3)


@pytest.fixture
def k4_minus_e() -> Graph:
    """K_4 without the edge (2, 3)."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


@pytest.fixture
def two_k4_minus_e() -> Graph:
    """Two disjoint copies of K_4 - e."""
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]
    return Graph.from_edges(8, edges + [(u + 4, v + 4) for u, v in edges])

