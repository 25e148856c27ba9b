"""
Reduced graph of an L_h layout: one vertex per source, an edge wherever two
sources share a vertex.
"""
from itertools import combinations

from src.families.lh import Index, LhLayout
from src.graphs.graph import Graph, contains_clique


def source_vertex(index: Index, h: int) -> int:
    i, j = index
    return (i - 1) * h + (j - 1)


def reduced_graph(layout: LhLayout) -> Graph:
    edges = []
    for (a, sa), (b, sb) in combinations(sorted(layout.sources.items()), 2):
        if sa.vertices & sb.vertices:
            edges.append((source_vertex(a, layout.h), source_vertex(b, layout.h)))
    return Graph.from_edges(layout.h * layout.h, edges)


def has_triangle(g: Graph) -> bool:
    return contains_clique(g, range(g.n), 3)


def has_four_cycle(g: Graph) -> bool:
    """A C_4 exists iff some pair of vertices has two common neighbours."""
    for u, v in combinations(range(g.n), 2):
        if (g.rows[u] & g.rows[v]).bit_count() >= 2:
            return True
    return False
