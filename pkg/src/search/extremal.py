"""
Exhaustive extremal searches over all labeled graphs on n vertices.
"""
import logging
import time
from functools import partial
from math import comb
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from config.settings import DEFAULT_WORKERS, WITNESS_CAP
from src.graphs.edge_list import format_graph, parse_graph_text
from src.graphs.graph import Graph, are_isomorphic
from src.search.enumeration import DEFAULT_SHARDS, check_budget, code_to_graph, merge_shards, run_shards

logger = logging.getLogger(__name__)

Objective = Literal["max_tau", "min_percolating_edges", "min_edges_given_tau"]


class SearchResult(BaseModel):
    objective: Objective
    n: int
    r: int
    value: Optional[int] = None
    target: Optional[int] = None
    witnesses: List[str] = Field(default_factory=list)
    graphs_scanned: int = 0
    wall_time: float = 0.0
    dedup: bool = False
    profile: Dict[int, int] = Field(default_factory=dict)
    fit: Optional[Tuple[float, float]] = None

    def witness_graphs(self) -> List[Graph]:
        return [parse_graph_text(text) for text in self.witnesses]


def _tau_score(tau: int, edges: int, percolates: bool) -> int:
    return tau


def _percolating_edges_score(tau: int, edges: int, percolates: bool) -> Optional[int]:
    return edges if percolates else None


def _edges_at_tau_score(target: int, tau: int, edges: int, percolates: bool) -> Optional[int]:
    return edges if tau == target else None


def _distinct(graphs: List[Graph]) -> List[Graph]:
    kept: List[Graph] = []
    for g in graphs:
        if not any(are_isomorphic(g, other) for other in kept):
            kept.append(g)
    return kept


def _search(
    objective: Objective,
    n: int,
    r: int,
    score,
    maximize: bool,
    target: Optional[int] = None,
    workers: Optional[int] = None,
    dedup: bool = False,
    allow_large: bool = False,
    cap: Optional[int] = None,
    shards: int = DEFAULT_SHARDS,
    shard_index: Optional[int] = None,
) -> SearchResult:
    if r < 3:
        raise ValueError(f"Clique size r must be at least 3, got {r}")
    check_budget(n, allow_large=allow_large)
    cap = WITNESS_CAP if cap is None else cap
    workers = DEFAULT_WORKERS if workers is None else workers
    started = time.perf_counter()
    results = run_shards(
        n, r, score, maximize, cap, workers=workers, dedup=dedup, shards=shards, shard_index=shard_index
    )
    best, codes, histogram, scanned = merge_shards(results, maximize, cap)
    graphs = [code_to_graph(n, code) for code in codes]
    if dedup:
        graphs = _distinct(graphs)
    profile: Dict[int, int] = {}
    for (tau, edges, _), _count in histogram.items():
        if tau not in profile or edges < profile[tau]:
            profile[tau] = edges
    result = SearchResult(
        objective=objective,
        n=n,
        r=r,
        value=best,
        target=target,
        witnesses=[format_graph(g) for g in graphs],
        graphs_scanned=scanned,
        wall_time=time.perf_counter() - started,
        dedup=dedup,
        profile=dict(sorted(profile.items())),
    )
    logger.info(f"{objective} for n={n}, r={r}: value={best} after {scanned} graphs")
    return result


def tau_max(n: int, r: int, **options) -> SearchResult:
    """
    Largest saturation time over all labeled n-vertex graphs.

    Args:
        n: Vertex count (at least 3)
        r: Clique size
        **options: workers, dedup, allow_large, cap, shards, shard_index

    Returns:
        The search result with up to ``cap`` witnesses
    """
    if n < 3:
        raise ValueError(f"tau_max needs n >= 3, got {n}")
    return _search("max_tau", n, r, _tau_score, True, **options)


def min_percolating_edges(n: int, r: int, **options) -> SearchResult:
    """Fewest edges of a percolating n-vertex graph."""
    if n < r:
        raise ValueError(f"min_percolating_edges needs n >= r, got n={n}, r={r}")
    return _search("min_percolating_edges", n, r, _percolating_edges_score, False, **options)


def weak_saturation_number(n: int, r: int) -> int:
    """C(n,2) - C(n-r+2,2), the known value of the minimum above."""
    return comb(n, 2) - comb(n - r + 2, 2)


def affine_fit(profile: Dict[int, int]) -> Optional[Tuple[float, float]]:
    """Least-squares ``(slope, intercept)`` of minimum edges against tau >= 1."""
    points = sorted((t, e) for t, e in profile.items() if t >= 1)
    if len(points) < 2:
        return None
    ts = np.array([t for t, _ in points], dtype=float)
    es = np.array([e for _, e in points], dtype=float)
    slope, intercept = np.polyfit(ts, es, 1)
    return round(float(slope), 6), round(float(intercept), 6)


def min_edges_given_tau(n_max: int, r: int, t: int, **options) -> SearchResult:
    """
    Fewest edges of a graph on at most ``n_max`` vertices with saturation time ``t``.

    Isolated vertices change neither edges nor saturation time, so one scan at
    ``n_max`` covers every smaller vertex count. The per-tau minima of that scan
    are kept in ``profile`` and fitted by a line.
    """
    if t < 0:
        raise ValueError(f"Target time must be non-negative, got {t}")
    result = _search("min_edges_given_tau", n_max, r, partial(_edges_at_tau_score, t), False, target=t, **options)
    result.fit = affine_fit(result.profile)
    return result


def exact_percolation_probability(
    n: int, r: int, p: float, workers: Optional[int] = None, allow_large: bool = False
) -> float:
    """
    P[G(n, p) percolates], summed exactly over all labeled graphs.

    Args:
        n: Vertex count
        r: Clique size
        p: Edge probability in [0, 1]
        workers: joblib worker count
        allow_large: Permit n up to the hard search bound

    Returns:
        The probability
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Edge probability must lie in [0, 1], got {p}")
    check_budget(n, allow_large=allow_large)
    workers = DEFAULT_WORKERS if workers is None else workers
    results = run_shards(n, r, _percolating_edges_score, False, 0, workers=workers)
    _, _, histogram, _ = merge_shards(results, False, 0)
    pairs = comb(n, 2)
    total = 0.0
    for (_, edges, percolates), count in histogram.items():
        if percolates:
            total += count * p ** edges * (1.0 - p) ** (pairs - edges)
    return total
