"""
Constructors for K_r - e, paths and the recursive family H_t.

H_t has a body clique on r-1 vertices and a chain v_1..v_t. Each chain
vertex v_s is joined to v_{s-1} and to r-3 body vertices; H_1 is K_r - e.
The canonical member alternates a designated body vertex b*: even chain
vertices are joined to b*, odd ones are not.
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import List, Sequence, Tuple

from src.graphs.graph import Edge, Graph, canonical_edge

logger = logging.getLogger(__name__)


class LayoutError(ValueError):
    """Raised when family parameters are outside their valid range."""


@dataclass(frozen=True)
class HtLayout:
    """Vertex roles of an H_t member: body clique, chain v_1..v_t, and v_0."""

    r: int
    t: int
    body: Tuple[int, ...]
    chain: Tuple[int, ...]
    v0: int

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self.body + self.chain

    def level(self, s: int) -> Tuple[int, ...]:
        """V_s: the body plus v_1..v_s."""
        return self.body + self.chain[:s]

    def roles(self) -> dict:
        roles = {v: "body" for v in self.body}
        roles.update({v: f"chain:{k}" for k, v in enumerate(self.chain, 1)})
        return roles

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "t": self.t,
            "body": list(self.body),
            "chain": list(self.chain),
            "v0": self.v0,
            "roles": {str(v): role for v, role in sorted(self.roles().items())},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HtLayout":
        try:
            body = tuple(int(v) for v in data["body"])
            chain = tuple(int(v) for v in data["chain"])
            return cls(r=int(data["r"]), t=len(chain), body=body, chain=chain, v0=int(data.get("v0", body[0])))
        except (KeyError, TypeError, IndexError, ValueError, AttributeError) as e:
            raise LayoutError(f"Malformed H_t layout: {e!r}") from e


def body_neighbors(r: int, s: int, body: Sequence[int]) -> Tuple[int, ...]:
    """
    Body vertices joined to v_s in the canonical member.

    b* is the last body vertex. v_1 sees every body vertex except b*; odd
    v_s (s >= 3) see the first r-3 body vertices; even v_s see the first
    r-4 body vertices plus b*.
    """
    if s == 1:
        return tuple(body[: r - 2])
    if s % 2:
        return tuple(body[: r - 3])
    return tuple(body[: r - 4]) + (body[r - 2],)


def outgoing_vertex(r: int, i: int, body: Sequence[int]) -> int:
    """A body vertex u not joined to v_i, whose edge to v_i appears at step i."""
    if i == 1 or i % 2:
        return body[r - 2]
    return body[r - 4]


def removable_body_edge(r: int, body: Sequence[int]) -> Edge:
    """
    The body edge deleted to make H_i - e inert.

    It avoids b* and every outgoing vertex, and no chain vertex beyond v_1 sees
    both of its endpoints.
    """
    if r < 5:
        raise LayoutError(f"A removable body edge needs r >= 5, got r={r}")
    return canonical_edge(body[r - 5], body[r - 3])


def ht_edges(r: int, body: Sequence[int], chain: Sequence[int]) -> List[Edge]:
    edges = [canonical_edge(a, b) for a, b in combinations(body, 2)]
    for s, v in enumerate(chain, 1):
        if s >= 2:
            edges.append(canonical_edge(v, chain[s - 2]))
        edges.extend(canonical_edge(v, b) for b in body_neighbors(r, s, body))
    return edges


def build_kr_minus_e(r: int) -> Graph:
    """K_r without the edge (r-2, r-1)."""
    if r < 3:
        raise LayoutError(f"Clique size r must be at least 3, got {r}")
    edges = [(a, b) for a, b in combinations(range(r), 2) if (a, b) != (r - 2, r - 1)]
    return Graph.from_edges(r, edges)


def build_path(m: int) -> Graph:
    """Path 0-1-...-m with ``m`` edges."""
    if m < 0:
        raise LayoutError(f"Path length must be non-negative, got {m}")
    return Graph.from_edges(m + 1, [(k, k + 1) for k in range(m)])


def build_ht(r: int, t: int) -> Tuple[Graph, HtLayout]:
    """
    Build the canonical member of H_t.

    Args:
        r: Clique size (at least 4)
        t: Number of chain vertices (at least 1)

    Returns:
        The graph on r-1+t vertices and its layout
    """
    if r < 4 or t < 1:
        raise LayoutError(f"H_t needs r >= 4 and t >= 1, got r={r}, t={t}")
    body = tuple(range(r - 1))
    chain = tuple(range(r - 1, r - 1 + t))
    layout = HtLayout(r=r, t=t, body=body, chain=chain, v0=body[0])
    graph = Graph.from_edges(r - 1 + t, ht_edges(r, body, chain))
    logger.debug(f"Built H_{t} for r={r}: {graph!r}")
    return graph, layout


def build_ht_minus_e(r: int, t: int) -> Tuple[Graph, HtLayout, Edge]:
    """H_t with its removable body edge deleted (inert until that edge returns)."""
    graph, layout = build_ht(r, t)
    missing = removable_body_edge(r, layout.body)
    return graph.remove_edges([missing]), layout, missing


def ht_size(r: int, t: int) -> Tuple[int, int]:
    """Vertex and edge counts of any H_t member."""
    return r - 1 + t, (r - 1) * (r - 2) // 2 + t * (r - 2)
