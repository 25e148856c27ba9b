"""
Sharded Gray-code enumeration of all labeled graphs on n vertices.

Bit k of a graph code stands for the k-th vertex pair in lexicographic order.
The codes 0..2^N-1 are split into contiguous shards; inside a shard graphs are
visited in reflected Gray-code order so consecutive graphs differ by one edge
and the adjacency rows are updated in place.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, List, Optional, Tuple

from joblib import Parallel, delayed
from tqdm import tqdm

from config.settings import SEARCH_HARD_MAX_N, SEARCH_MAX_N, SHOW_PROGRESS
from src.graphs.graph import Edge, Graph, find_isomorphism
from src.percolation.engine import close_rows

logger = logging.getLogger(__name__)

DEFAULT_SHARDS = 64

# (tau, edge count, percolates) -> value under the objective, or None to skip
Score = Callable[[int, int, bool], Optional[int]]
Outcome = Tuple[int, int, bool]


class BudgetExceededError(ValueError):
    """Raised when a requested computation is larger than its configured budget."""

    def __init__(self, message: str, estimate: int = 0):
        super().__init__(message)
        self.estimate = estimate


def pair_slots(n: int) -> List[Edge]:
    return list(combinations(range(n), 2))


def graph_count(n: int) -> int:
    return 1 << (n * (n - 1) // 2)


def check_budget(n: int, allow_large: bool = False, max_n: Optional[int] = None, hard_max_n: Optional[int] = None) -> None:
    """
    Refuse searches beyond the configured vertex bound.

    Raises:
        BudgetExceededError: With the number of graphs the scan would visit
    """
    max_n = SEARCH_MAX_N if max_n is None else max_n
    hard_max_n = SEARCH_HARD_MAX_N if hard_max_n is None else hard_max_n
    limit = hard_max_n if allow_large else max_n
    if n > limit:
        hint = "" if allow_large or n > hard_max_n else f" (n <= {hard_max_n} needs the large-search flag)"
        raise BudgetExceededError(
            f"Exhaustive search over n={n} would visit {graph_count(n)} graphs; limit is n <= {limit}{hint}",
            estimate=graph_count(n),
        )


def gray(i: int) -> int:
    return i ^ (i >> 1)


def code_to_graph(n: int, code: int) -> Graph:
    slots = pair_slots(n)
    return Graph.from_edges(n, (slots[k] for k in range(len(slots)) if code >> k & 1))


def shard_bounds(n: int, shards: int) -> List[Tuple[int, int]]:
    """Contiguous index ranges covering 0..2^N-1; fixed by ``n`` and ``shards`` alone."""
    total = graph_count(n)
    shards = max(1, min(shards, total))
    step, extra = divmod(total, shards)
    bounds = []
    start = 0
    for s in range(shards):
        stop = start + step + (1 if s < extra else 0)
        bounds.append((start, stop))
        start = stop
    return bounds


@dataclass
class ShardResult:
    """Local outcome of one shard; merged in shard order."""

    index: int
    best: Optional[int] = None
    witnesses: List[int] = field(default_factory=list)
    histogram: Dict[Outcome, int] = field(default_factory=dict)
    scanned: int = 0


class _IsomorphismFilter:
    """Keeps one representative per isomorphism class, bucketed by degree sequence."""

    def __init__(self):
        self.buckets: Dict[Tuple[int, Tuple[int, ...]], List[Graph]] = {}

    def is_new(self, g: Graph) -> bool:
        key = (g.edge_count, g.degree_sequence())
        bucket = self.buckets.setdefault(key, [])
        if any(find_isomorphism(g, rep) is not None for rep in bucket):
            return False
        bucket.append(g)
        return True


def scan_shard(
    n: int,
    r: int,
    index: int,
    start: int,
    stop: int,
    score: Score,
    maximize: bool,
    cap: int,
    dedup: bool = False,
) -> ShardResult:
    """
    Evaluate every graph with Gray index in ``[start, stop)``.

    Args:
        n: Vertex count
        r: Clique size
        index: Shard number, carried into the result
        start: First Gray index
        stop: One past the last Gray index
        score: Objective value of an outcome, None when the graph does not qualify
        maximize: Whether larger scores are better
        cap: Witnesses kept for the shard's best score
        dedup: Skip graphs isomorphic to one already seen in this shard

    Returns:
        Best score, first witnesses in visiting order, outcome histogram
    """
    slots = pair_slots(n)
    k = r - 2
    result = ShardResult(index=index)
    if start >= stop:
        return result
    code = gray(start)
    rows = [0] * n
    for bit, (u, v) in enumerate(slots):
        if code >> bit & 1:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    seen = _IsomorphismFilter() if dedup else None
    for i in range(start, stop):
        if i > start:
            bit = (i & -i).bit_length() - 1
            code ^= 1 << bit
            u, v = slots[bit]
            rows[u] ^= 1 << v
            rows[v] ^= 1 << u
        if seen is not None and not seen.is_new(Graph(n, tuple(rows))):
            continue
        result.scanned += 1
        work = list(rows)
        edges = sum(row.bit_count() for row in rows) // 2
        tau, closed = close_rows(work, n, k)
        outcome = (tau, edges, closed == len(slots))
        result.histogram[outcome] = result.histogram.get(outcome, 0) + 1
        value = score(*outcome)
        if value is None:
            continue
        if result.best is None or (value > result.best if maximize else value < result.best):
            result.best = value
            result.witnesses = [code]
        elif value == result.best and len(result.witnesses) < cap:
            result.witnesses.append(code)
    return result


def run_shards(
    n: int,
    r: int,
    score: Score,
    maximize: bool,
    cap: int,
    workers: int = 1,
    dedup: bool = False,
    shards: int = DEFAULT_SHARDS,
    shard_index: Optional[int] = None,
    show_progress: Optional[bool] = None,
) -> List[ShardResult]:
    """
    Scan all shards (or a single one) through joblib.

    The shard layout depends only on ``n`` and ``shards``, so the merged result
    is the same for every worker count.
    """
    bounds = shard_bounds(n, shards)
    jobs = list(enumerate(bounds))
    if shard_index is not None:
        if not 0 <= shard_index < len(bounds):
            raise ValueError(f"Shard index {shard_index} outside [0, {len(bounds)})")
        jobs = [jobs[shard_index]]
    show = SHOW_PROGRESS if show_progress is None else show_progress
    tasks = tqdm(jobs, desc=f"Scanning n={n}", disable=not show)
    results = Parallel(n_jobs=workers)(
        delayed(scan_shard)(n, r, idx, lo, hi, score, maximize, cap, dedup) for idx, (lo, hi) in tasks
    )
    logger.info(f"Scanned {len(jobs)} shards for n={n}, r={r}")
    return sorted(results, key=lambda res: res.index)


def merge_shards(results: List[ShardResult], maximize: bool, cap: int) -> Tuple[Optional[int], List[int], Dict[Outcome, int], int]:
    """Best value, first ``cap`` witnesses in shard order, merged histogram and scan count."""
    values = [res.best for res in results if res.best is not None]
    best = (max(values) if maximize else min(values)) if values else None
    witnesses: List[int] = []
    histogram: Dict[Outcome, int] = {}
    scanned = 0
    for res in results:
        scanned += res.scanned
        for outcome, count in res.histogram.items():
            histogram[outcome] = histogram.get(outcome, 0) + count
        if best is not None and res.best == best:
            witnesses.extend(res.witnesses[: cap - len(witnesses)])
    return best, witnesses, histogram, scanned
