"""
Immutable labeled graph with bit-row adjacency.

Row ``rows[v]`` is an integer whose bit ``w`` is set iff ``vw`` is an edge.
Python integers are arbitrary precision, so a row is a single machine word
for n <= 64 and grows transparently beyond that.
"""
import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
VertexSet = FrozenSet[int]


class InvalidGraphError(ValueError):
    """Raised for out-of-range endpoints, loops or non-bijective relabelings."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def to_vertex_set(mask: int) -> VertexSet:
    return frozenset(iter_bits(mask))


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A simple graph on vertices ``0..n-1``; all operations return new values."""

    n: int
    rows: Tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """
        Build a canonical graph from an edge list.

        Args:
            n: Number of vertices
            edges: Pairs of endpoints in any orientation; duplicates collapse

        Returns:
            The graph

        Raises:
            InvalidGraphError: On a loop or an endpoint outside ``[0, n)``
        """
        if n < 0:
            raise InvalidGraphError(f"Vertex count must be non-negative, got {n}")
        rows = [0] * n
        for pair in edges:
            u, v = int(pair[0]), int(pair[1])
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraphError(f"Endpoint out of range in edge ({u}, {v}) for n={n}")
            if u == v:
                raise InvalidGraphError(f"Loop edge ({u}, {v}) is not allowed")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def edges(self) -> Tuple[Edge, ...]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        result = []
        for u, row in enumerate(self.rows):
            for v in iter_bits(row >> (u + 1)):
                result.append((u, u + 1 + v))
        return tuple(result)

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> VertexSet:
        return to_vertex_set(self.rows[v])

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degree_sequence(self) -> Tuple[int, ...]:
        return tuple(sorted((row.bit_count() for row in self.rows), reverse=True))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        mask = to_mask(vertices)
        return all((self.rows[v] | (1 << v)) & mask == mask for v in iter_bits(mask))

    def add_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        extra = Graph.from_edges(self.n, edges)
        return Graph(self.n, tuple(a | b for a, b in zip(self.rows, extra.rows)))

    def remove_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        drop = Graph.from_edges(self.n, edges)
        return Graph(self.n, tuple(a & ~b for a, b in zip(self.rows, drop.rows)))

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Keep the vertex range, drop every edge leaving ``vertices``."""
        mask = to_mask(vertices)
        return Graph(self.n, tuple(row & mask if mask >> v & 1 else 0 for v, row in enumerate(self.rows)))

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self.n == other.n and all(a & ~b == 0 for a, b in zip(self.rows, other.rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Canonical graph from an edge list; see ``Graph.from_edges``."""
    return Graph.from_edges(n, edge_list)


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(g.rows)))


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise InvalidGraphError(f"Vertex {v} out of range for n={g.n}")


def common_neighbors(g: Graph, u: int, v: int) -> VertexSet:
    _check_vertex(g, u)
    _check_vertex(g, v)
    return to_vertex_set(g.rows[u] & g.rows[v])


def has_clique(rows: Sequence[int], mask: int, k: int) -> bool:
    """True iff the vertices of ``mask`` contain a ``k``-clique under ``rows``."""
    if k <= 0:
        return True
    if k == 1:
        return mask != 0
    if mask.bit_count() < k:
        return False
    if k == 2:
        for v in iter_bits(mask):
            if rows[v] & mask:
                return True
        return False
    rest = mask
    while rest.bit_count() >= k:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        if has_clique(rows, rows[v] & rest, k - 1):
            return True
    return False


def contains_clique(g: Graph, candidates: Iterable[int], k: int) -> bool:
    mask = to_mask(candidates) & g.vertex_mask
    return has_clique(g.rows, mask, k)


def _bron_kerbosch(rows: Sequence[int], r: int, p: int, x: int, out: List[int]) -> None:
    if not p and not x:
        out.append(r)
        return
    # pivot: vertex of p | x with most neighbours in p
    pivot = max(iter_bits(p | x), key=lambda u: (rows[u] & p).bit_count())
    for v in iter_bits(p & ~rows[pivot]):
        bit = 1 << v
        _bron_kerbosch(rows, r | bit, p & rows[v], x & rows[v], out)
        p &= ~bit
        x |= bit


def maximal_clique_masks(g: Graph) -> List[int]:
    """Inclusion-maximal cliques as bit masks, lexicographic on sorted members."""
    if g.n == 0:
        return []
    found: List[int] = []
    _bron_kerbosch(g.rows, 0, g.vertex_mask, 0, found)
    return sorted(found, key=lambda m: list(iter_bits(m)))


def maximal_cliques(g: Graph) -> List[VertexSet]:
    return [to_vertex_set(m) for m in maximal_clique_masks(g)]


def _eccentricity_mask_bfs(g: Graph, source: int) -> Tuple[int, int]:
    """Return (reached mask, eccentricity within the reached component)."""
    seen = 1 << source
    frontier = seen
    depth = 0
    while True:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.rows[v]
        nxt &= ~seen
        if not nxt:
            return seen, depth
        seen |= nxt
        frontier = nxt
        depth += 1


def diameter(g: Graph) -> Union[int, float]:
    """Largest shortest-path distance; ``math.inf`` when disconnected."""
    if g.n == 0:
        raise InvalidGraphError("Diameter is undefined for the empty vertex set")
    best = 0
    for v in range(g.n):
        reached, ecc = _eccentricity_mask_bfs(g, v)
        if reached != g.vertex_mask:
            return math.inf
        best = max(best, ecc)
    return best


def distance(g: Graph, u: int, v: int) -> Union[int, float]:
    seen = 1 << u
    frontier = seen
    depth = 0
    while frontier:
        if seen >> v & 1:
            return depth
        nxt = 0
        for w in iter_bits(frontier):
            nxt |= g.rows[w]
        nxt &= ~seen
        seen |= nxt
        frontier = nxt
        depth += 1
    return math.inf


def is_connected_within(g: Graph, mask: int) -> bool:
    """Connectivity of the subgraph induced on ``mask`` (empty set counts as connected)."""
    if not mask:
        return True
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.rows[v]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


def is_k_connected(g: Graph, k: int) -> bool:
    """
    Standard vertex connectivity test: more than ``k`` vertices and no
    separating set of fewer than ``k`` vertices.
    """
    if k <= 0:
        return True
    if g.n <= k:
        return False
    full = g.vertex_mask
    for size in range(k):
        for removed in combinations(range(g.n), size):
            if not is_connected_within(g, full & ~to_mask(removed)):
                return False
    return True


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Image of ``g`` under the vertex map ``v -> perm[v]``."""
    if len(perm) != g.n or sorted(perm) != list(range(g.n)):
        raise InvalidGraphError(f"Relabeling {list(perm)} is not a bijection of [0, {g.n})")
    rows = [0] * g.n
    for v, row in enumerate(g.rows):
        image = 0
        for w in iter_bits(row):
            image |= 1 << perm[w]
        rows[perm[v]] = image
    return Graph(g.n, tuple(rows))


def inverse_permutation(perm: Sequence[int]) -> List[int]:
    inverse = [0] * len(perm)
    for v, image in enumerate(perm):
        inverse[image] = v
    return inverse


def find_isomorphism(g: Graph, h: Graph) -> Optional[List[int]]:
    """
    Backtracking search for a vertex map carrying ``g`` onto ``h``.

    Candidates are restricted to equal-degree vertices; meant for the small
    graphs of the exhaustive searches.
    """
    if g.n != h.n or g.edge_count != h.edge_count or g.degree_sequence() != h.degree_sequence():
        return None
    n = g.n
    order = sorted(range(n), key=lambda v: -g.degree(v))
    image = [-1] * n
    used = 0

    def extend(pos: int) -> bool:
        nonlocal used
        if pos == n:
            return True
        v = order[pos]
        for w in range(n):
            if used >> w & 1 or h.degree(w) != g.degree(v):
                continue
            if any(g.has_edge(v, order[i]) != h.has_edge(w, image[order[i]]) for i in range(pos)):
                continue
            image[v] = w
            used |= 1 << w
            if extend(pos + 1):
                return True
            used &= ~(1 << w)
            image[v] = -1
        return False

    return list(image) if extend(0) else None


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None
