"""
Layered construction L_h built from H_i - e sources and K_r - 2e bridges.

Layer i holds h sources S_{i,1..h}, each a copy of H_i with one body edge
deleted, and h bridges. Bridges chain the sources in order, layer by layer,
so each source starts only after the previous one has finished. The chain
vertices v_2..v_i of a layer-i source are borrowed from sources in the
layers above, selected by the permutation family.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from src.families.ht import (
    HtLayout,
    LayoutError,
    ht_edges,
    outgoing_vertex,
    removable_body_edge,
)
from src.graphs.graph import Edge, Graph, VertexSet, canonical_edge

logger = logging.getLogger(__name__)

Index = Tuple[int, int]
Permutations = Dict[Tuple[int, int], Tuple[int, ...]]


@dataclass(frozen=True)
class SourceLayout:
    """Source S_{i,j}: an H_i realization, minus ``missing_edge`` unless it is S_{1,1}."""

    index: Index
    ht: HtLayout
    missing_edge: Optional[Edge]
    outgoing: int

    @property
    def vertices(self) -> VertexSet:
        return frozenset(self.ht.vertices)

    @property
    def in_layer(self) -> Tuple[int, ...]:
        """Vertices created for this source: the body and v_1."""
        return self.ht.body + self.ht.chain[:1]


@dataclass(frozen=True)
class BridgeLayout:
    index: Index
    vertices: Tuple[int, ...]
    missing_edges: Tuple[Edge, ...]
    dummy: bool = False


@dataclass(frozen=True)
class LhLayout:
    r: int
    h: int
    n: int
    sources: Dict[Index, SourceLayout] = field(hash=False)
    bridges: Dict[Index, BridgeLayout] = field(hash=False)
    perms: Permutations = field(hash=False)

    def roles(self) -> Dict[int, List[str]]:
        """Every role a vertex plays, for the JSON sidecar."""
        roles: Dict[int, List[str]] = {v: [] for v in range(self.n)}
        for (i, j), source in sorted(self.sources.items()):
            roles_in_source = source.ht.roles()
            for v in sorted(source.vertices):
                roles[v].append(f"source:({i},{j})")
                roles[v].append(roles_in_source[v])
        for (i, j), bridge in sorted(self.bridges.items()):
            for v in bridge.vertices:
                roles[v].append(f"bridge:({i},{j})")
        return roles

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "h": self.h,
            "n": self.n,
            "sources": [
                {
                    "index": list(idx),
                    "body": list(s.ht.body),
                    "chain": list(s.ht.chain),
                    "missing_edge": list(s.missing_edge) if s.missing_edge else None,
                    "outgoing": s.outgoing,
                }
                for idx, s in sorted(self.sources.items())
            ],
            "bridges": [
                {
                    "index": list(idx),
                    "vertices": list(b.vertices),
                    "missing_edges": [list(e) for e in b.missing_edges],
                    "dummy": b.dummy,
                }
                for idx, b in sorted(self.bridges.items())
            ],
            "perms": {f"{a},{b}": list(p) for (a, b), p in sorted(self.perms.items())},
            "roles": {str(v): rs for v, rs in self.roles().items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LhLayout":
        """
        Rebuild a layout from its JSON sidecar.

        Raises:
            LayoutError: If a field is missing or has the wrong shape
        """
        try:
            return cls._from_dict(data)
        except (KeyError, TypeError, IndexError, ValueError, AttributeError) as e:
            raise LayoutError(f"Malformed L_h layout: {e!r}") from e

    @classmethod
    def _from_dict(cls, data: dict) -> "LhLayout":
        r, h = int(data["r"]), int(data["h"])
        sources = {}
        for item in data["sources"]:
            idx = (int(item["index"][0]), int(item["index"][1]))
            body = tuple(int(v) for v in item["body"])
            chain = tuple(int(v) for v in item["chain"])
            missing = item.get("missing_edge")
            sources[idx] = SourceLayout(
                index=idx,
                ht=HtLayout(r=r, t=len(chain), body=body, chain=chain, v0=body[0]),
                missing_edge=canonical_edge(*missing) if missing else None,
                outgoing=int(item.get("outgoing", outgoing_vertex(r, idx[0], body))),
            )
        bridges = {}
        for item in data["bridges"]:
            idx = (int(item["index"][0]), int(item["index"][1]))
            bridges[idx] = BridgeLayout(
                index=idx,
                vertices=tuple(int(v) for v in item["vertices"]),
                missing_edges=tuple(canonical_edge(*e) for e in item["missing_edges"]),
                dummy=bool(item.get("dummy", False)),
            )
        perms = {}
        for key, values in data["perms"].items():
            a, b = (int(x) for x in key.split(","))
            perms[(a, b)] = tuple(int(v) for v in values)
        return cls(r=r, h=h, n=int(data["n"]), sources=sources, bridges=bridges, perms=perms)


def is_prime(h: int) -> bool:
    if h < 2:
        return False
    return all(h % d for d in range(2, int(h ** 0.5) + 1))


def default_permutations(h: int) -> Permutations:
    """
    pi_i^l(j) = ((j-1) + (i-l)*i mod h) + 1 for 1 <= l <= i <= h.

    For prime h two distinct sources can meet a common lower-layer source in
    at most one layer.
    """
    return {
        (i, l): tuple(((j - 1) + (i - l) * i) % h + 1 for j in range(1, h + 1))
        for i in range(1, h + 1)
        for l in range(1, i + 1)
    }


def next_index(index: Index, h: int) -> Optional[Index]:
    """Source that follows ``index`` in activation order."""
    i, j = index
    if j < h:
        return i, j + 1
    if i < h:
        return i + 1, 1
    return None


def _allocate(r: int, h: int) -> Tuple[Dict[Index, Tuple[Tuple[int, ...], int]], Dict[Index, Tuple[int, ...]], int]:
    in_layer: Dict[Index, Tuple[Tuple[int, ...], int]] = {}
    fresh: Dict[Index, Tuple[int, ...]] = {}
    nxt = 0
    for i in range(1, h + 1):
        for j in range(1, h + 1):
            in_layer[(i, j)] = (tuple(range(nxt, nxt + r - 1)), nxt + r - 1)
            nxt += r
        for j in range(1, h + 1):
            count = r - 2 if (i, j) == (h, h) else r - 4
            fresh[(i, j)] = tuple(range(nxt, nxt + count))
            nxt += count
    return in_layer, fresh, nxt


def _reserved(r: int, index: Index, body: Tuple[int, ...], v1: int) -> set:
    """In-layer vertices of a source that also sit in one of its bridges."""
    i, _ = index
    reserved = {outgoing_vertex(r, i, body)}
    if index != (1, 1):
        reserved.update(removable_body_edge(r, body))
    if i == 1:
        reserved.add(v1)
    return reserved


def build_lh(r: int, h: int, perms: Optional[Permutations] = None) -> Tuple[Graph, LhLayout]:
    """
    Build the canonical L_h.

    Args:
        r: Clique size (at least 5)
        h: Number of layers (at least 2; prime unless ``perms`` is given)
        perms: Optional permutation family keyed by ``(i, l)``, values 1-based

    Returns:
        The graph on 2rh^2 - 4h^2 + 2 vertices and its layout

    Raises:
        LayoutError: On a parameter range violation, non-prime ``h`` under the
            default permutations, or when an upper source has no free vertex
            left to lend
    """
    if r < 5 or h < 2:
        raise LayoutError(f"L_h needs r >= 5 and h >= 2, got r={r}, h={h}")
    if perms is None:
        if not is_prime(h):
            raise LayoutError(f"The default permutation family needs a prime h, got h={h}")
        perms = default_permutations(h)

    in_layer, fresh, n = _allocate(r, h)
    used: set = set()
    chains: Dict[Index, Tuple[int, ...]] = {}
    for i in range(1, h + 1):
        for j in range(1, h + 1):
            body, v1 = in_layer[(i, j)]
            chain = [v1]
            for t in range(2, i + 1):
                k = i - t + 1
                target = (k, perms[(i, k)][j - 1])
                t_body, t_v1 = in_layer[target]
                reserved = _reserved(r, target, t_body, t_v1)
                free = [v for v in t_body + (t_v1,) if v not in used]
                if not free:
                    raise LayoutError(f"Source {target} has no vertex left for v_{t} of source {(i, j)}")
                pick = min(free, key=lambda v: (v in reserved, v))
                used.add(pick)
                chain.append(pick)
            chains[(i, j)] = tuple(chain)

    sources: Dict[Index, SourceLayout] = {}
    for (i, j), chain in chains.items():
        body, _ = in_layer[(i, j)]
        ht = HtLayout(r=r, t=i, body=body, chain=chain, v0=body[0])
        missing = None if (i, j) == (1, 1) else removable_body_edge(r, body)
        sources[(i, j)] = SourceLayout(index=(i, j), ht=ht, missing_edge=missing, outgoing=outgoing_vertex(r, i, body))

    bridges: Dict[Index, BridgeLayout] = {}
    for idx, source in sources.items():
        head = canonical_edge(source.ht.chain[-1], source.outgoing)
        following = next_index(idx, h)
        if following is None:
            # the tail pair is fresh: it fills one round after the head and leads nowhere
            f = fresh[idx]
            bridges[idx] = BridgeLayout(
                index=idx,
                vertices=tuple(head) + f,
                missing_edges=(head, canonical_edge(f[0], f[1])),
                dummy=True,
            )
        else:
            tail = sources[following].missing_edge
            bridges[idx] = BridgeLayout(index=idx, vertices=tuple(head) + tuple(tail) + fresh[idx], missing_edges=(head, tail))

    edges = set()
    for source in sources.values():
        part = set(ht_edges(r, source.ht.body, source.ht.chain))
        part.discard(source.missing_edge)
        edges |= part
    for bridge in bridges.values():
        vs = bridge.vertices
        edges.update(canonical_edge(a, b) for a in vs for b in vs if a < b)
    edges.difference_update(e for b in bridges.values() for e in b.missing_edges)

    graph = Graph.from_edges(n, edges)
    layout = LhLayout(r=r, h=h, n=n, sources=sources, bridges=bridges, perms=perms)
    logger.info(f"Built L_{h} for r={r}: {graph!r}")
    return graph, layout


def lh_closed_form(r: int, h: int) -> Tuple[int, int, int]:
    """
    Closed forms v = 2rh^2 - 4h^2 + 2, e = h^2(r^2 - 3r/2 - 3) + h^3(r/2 - 1)
    and tau = h^2(h + 3)/2.

    The edge form charges every source as H_i - e, S_{1,1} included.
    """
    v = 2 * r * h * h - 4 * h * h + 2
    e = (h * h * (2 * r * r - 3 * r - 6) + h ** 3 * (r - 2)) // 2
    tau = h * h * (h + 3) // 2
    return v, e, tau


def lh_size(r: int, h: int) -> Tuple[int, int, int]:
    """
    Vertex count, edge count and saturation time of the canonical L_h.

    S_{1,1} keeps its body edge so that it is the 0-source; every other piece
    is a K_r minus two edges or an H_i - e, none of which contains a K_r - e.
    The edge count is therefore one above the closed form.
    """
    v, e, tau = lh_closed_form(r, h)
    return v, e + 1, tau
