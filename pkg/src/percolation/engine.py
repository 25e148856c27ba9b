"""
Synchronous K_r-bootstrap percolation.

A missing edge ``uv`` is added in round ``t`` iff, in the round ``t-1``
graph, the common neighbourhood of ``u`` and ``v`` contains a clique on
``r-2`` vertices. All such edges of a round are added simultaneously.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Set, Tuple

from src.graphs.graph import Edge, Graph, has_clique, iter_bits

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProcessParams:
    """Clique size ``r`` of the process."""

    r: int

    def __post_init__(self) -> None:
        if self.r < 3:
            raise ValueError(f"Clique size r must be at least 3, got {self.r}")

    @property
    def witness_size(self) -> int:
        return self.r - 2


@dataclass(frozen=True)
class InfectionTrace:
    """
    Full history of one run.

    ``times`` maps every edge of the closure to its activation round
    (0 for initially present edges). Edges absent from ``times`` never appear.
    """

    n: int
    r: int
    initial: Graph
    times: Dict[Edge, int] = field(hash=False)
    tau: int
    closure: Graph

    @property
    def percolates(self) -> bool:
        return self.closure.edge_count == self.n * (self.n - 1) // 2

    def events(self) -> List[Tuple[int, int, int]]:
        """Infections as ``(t, u, v)`` triples sorted by time, then endpoints."""
        return sorted((t, u, v) for (u, v), t in self.times.items() if t >= 1)

    def infected_at(self, t: int) -> List[Edge]:
        return sorted(e for e, s in self.times.items() if s == t)

    def graph_at(self, t: int) -> Graph:
        """The round-``t`` graph G_t."""
        return Graph.from_edges(self.n, (e for e, s in self.times.items() if s <= t))


def _completable(rows: List[int], u: int, v: int, k: int) -> bool:
    return has_clique(rows, rows[u] & rows[v], k)


def _all_non_edges(rows: List[int], n: int) -> List[Edge]:
    full = (1 << n) - 1
    pairs = []
    for u in range(n):
        for v in iter_bits((~rows[u] & full) >> (u + 1)):
            pairs.append((u, u + 1 + v))
    return pairs


def completable_edges(g: Graph, params: ProcessParams) -> Set[Edge]:
    """Non-edges whose endpoints have a K_{r-2} in their common neighbourhood."""
    rows = list(g.rows)
    k = params.witness_size
    return {(u, v) for u, v in _all_non_edges(rows, g.n) if _completable(rows, u, v, k)}


def step(g: Graph, params: ProcessParams) -> Graph:
    """One synchronous round."""
    added = completable_edges(g, params)
    return g.add_edges(added) if added else g


def _frontier(rows: List[int], n: int, added: Iterable[Edge]) -> List[Edge]:
    """
    Non-edges whose completability may have changed after ``added``: pairs
    touching an endpoint of a new edge, and pairs lying inside the common
    neighbourhood of a new edge.
    """
    full = (1 << n) - 1
    touched = 0
    pairs: Set[Edge] = set()
    for x, y in added:
        touched |= (1 << x) | (1 << y)
        inside = rows[x] & rows[y]
        for u in iter_bits(inside):
            for v in iter_bits(inside & ~rows[u] & ~((1 << (u + 1)) - 1)):
                pairs.add((u, v))
    for u in iter_bits(touched):
        for v in iter_bits(full & ~rows[u] & ~(1 << u)):
            pairs.add((u, v) if u < v else (v, u))
    return sorted(pairs)


def _run(g: Graph, params: ProcessParams, incremental: bool) -> InfectionTrace:
    n = g.n
    k = params.witness_size
    rows = list(g.rows)
    times: Dict[Edge, int] = {e: 0 for e in g.edges}
    candidates = _all_non_edges(rows, n)
    t = 0
    while candidates:
        added = [(u, v) for u, v in candidates if not rows[u] >> v & 1 and _completable(rows, u, v, k)]
        if not added:
            break
        t += 1
        for u, v in added:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
            times[(u, v)] = t
        logger.debug(f"Round {t}: {len(added)} edges infected")
        candidates = _frontier(rows, n, added) if incremental else _all_non_edges(rows, n)
    return InfectionTrace(n=n, r=params.r, initial=g, times=times, tau=t, closure=Graph(n, tuple(rows)))


def close(g: Graph, params: ProcessParams) -> InfectionTrace:
    """
    Run the process to its fixed point, re-testing only frontier pairs.

    Args:
        g: Initial graph
        params: Process parameters

    Returns:
        Trace with per-edge activation rounds, saturation time and closure
    """
    trace = _run(g, params, incremental=True)
    logger.debug(f"Closure of {g!r} under K_{params.r}: tau={trace.tau}")
    return trace


def close_naive(g: Graph, params: ProcessParams) -> InfectionTrace:
    """Reference run that rescans every non-edge each round."""
    return _run(g, params, incremental=False)


def saturation_time(g: Graph, params: ProcessParams) -> int:
    return close(g, params).tau


def percolates(g: Graph, params: ProcessParams) -> bool:
    return close(g, params).percolates


def close_rows(rows: List[int], n: int, k: int) -> Tuple[int, int]:
    """
    Closure on raw bit rows for the exhaustive searches.

    Args:
        rows: Adjacency rows, modified in place into the closure
        n: Vertex count
        k: Witness clique size ``r-2``

    Returns:
        ``(tau, closure edge count)``
    """
    candidates = _all_non_edges(rows, n)
    t = 0
    while candidates:
        added = [(u, v) for u, v in candidates if not rows[u] >> v & 1 and has_clique(rows, rows[u] & rows[v], k)]
        if not added:
            break
        t += 1
        for u, v in added:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        candidates = _frontier(rows, n, added)
    return t, sum(row.bit_count() for row in rows) // 2


def round_graphs(trace: InfectionTrace) -> List[Graph]:
    """G_0..G_tau rebuilt from the activation rounds."""
    return [trace.graph_at(t) for t in range(trace.tau + 1)]
