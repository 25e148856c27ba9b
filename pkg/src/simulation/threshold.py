"""
Monte Carlo estimate of the percolation threshold of G(n, p).

Every trial draws one uniform weight per vertex pair. Keeping the pairs of
weight at most p gives a sample of G(n, p) for every p at once, and these
graphs are nested, so each trial has a single threshold: the smallest p at
which its graph percolates.
"""
import logging
import math
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from pydantic import BaseModel, Field

from config.settings import DEFAULT_SEED, DEFAULT_WORKERS, THRESHOLD_QUANTILES
from src.graphs.graph import Edge, Graph
from src.percolation.engine import ProcessParams, close_rows
from src.simulation.streams import SPLIT_GRAPH, trial_rng

logger = logging.getLogger(__name__)


class ThresholdEstimate(BaseModel):
    n: int
    r: int
    trials: int
    seed: int
    p_hat: float
    quantiles: List[Tuple[float, float]]
    standard_error: float = 0.0
    lambda_scale: float = 0.0
    samples: List[float] = Field(default_factory=list, exclude=True)


def lambda_(r: int) -> Fraction:
    """(C(r,2) - 2) / (r - 2), the scaling exponent of the threshold."""
    if r < 3:
        raise ValueError(f"Clique size r must be at least 3, got {r}")
    return Fraction(math.comb(r, 2) - 2, r - 2)


def gnp(n: int, p: float, seed: int = DEFAULT_SEED, index: int = 0) -> Graph:
    """A seeded sample of G(n, p)."""
    rng = trial_rng(seed, index, SPLIT_GRAPH)
    slots = list(combinations(range(n), 2))
    keep = rng.random(len(slots)) < p
    return Graph.from_edges(n, (pair for pair, on in zip(slots, keep) if on))


def _prefix_percolates(n: int, slots: Sequence[Edge], order: np.ndarray, m: int, k: int) -> bool:
    rows = [0] * n
    for idx in order[:m]:
        u, v = slots[idx]
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    _, closed = close_rows(rows, n, k)
    return closed == len(slots)


def _weights(n: int, seed: int, index: int) -> Tuple[List[Edge], np.ndarray, np.ndarray]:
    slots = list(combinations(range(n), 2))
    weights = trial_rng(seed, index).random(len(slots))
    # stable sort: equal weights keep pair order
    order = np.argsort(weights, kind="stable")
    return slots, weights, order


def sample_threshold(n: int, params: ProcessParams, seed: int = DEFAULT_SEED, index: int = 0) -> float:
    """
    Threshold of one weighted trial, by binary search over the sorted pairs.

    Args:
        n: Vertex count (at least r)
        params: Process parameters
        seed: Master seed
        index: Trial number

    Returns:
        Weight of the pair whose arrival makes the graph percolate
    """
    if n < params.r:
        raise ValueError(f"Threshold sampling needs n >= r, got n={n}, r={params.r}")
    slots, weights, order = _weights(n, seed, index)
    lo, hi = 1, len(slots)
    while lo < hi:
        mid = (lo + hi) // 2
        if _prefix_percolates(n, slots, order, mid, params.witness_size):
            hi = mid
        else:
            lo = mid + 1
    return float(weights[order[lo - 1]])


def scan_threshold(n: int, params: ProcessParams, seed: int = DEFAULT_SEED, index: int = 0) -> float:
    """Same threshold as ``sample_threshold``, found by testing every prefix in turn."""
    slots, weights, order = _weights(n, seed, index)
    for m in range(1, len(slots) + 1):
        if _prefix_percolates(n, slots, order, m, params.witness_size):
            return float(weights[order[m - 1]])
    return 1.0


def _sample_batch(n: int, r: int, seed: int, start: int, stop: int) -> List[float]:
    params = ProcessParams(r)
    return [sample_threshold(n, params, seed, i) for i in range(start, stop)]


def _batches(trials: int, parts: int) -> List[Tuple[int, int]]:
    parts = max(1, min(parts, trials))
    size = math.ceil(trials / parts)
    return [(lo, min(lo + size, trials)) for lo in range(0, trials, size)]


def estimate_threshold(
    n: int,
    params: ProcessParams,
    trials: int,
    seed: int = DEFAULT_SEED,
    workers: Optional[int] = None,
    quantiles: Sequence[float] = THRESHOLD_QUANTILES,
) -> ThresholdEstimate:
    """
    Median threshold over independent trials.

    Args:
        n: Vertex count
        params: Process parameters
        trials: Number of trials (at least 1)
        seed: Master seed
        workers: joblib worker count
        quantiles: Levels reported alongside the median

    Returns:
        The estimate; identical for every worker count
    """
    if trials < 1:
        raise ValueError(f"Need at least one trial, got {trials}")
    workers = DEFAULT_WORKERS if workers is None else workers
    batches = _batches(trials, 4 * max(1, workers if workers > 0 else 8))
    chunks = Parallel(n_jobs=workers)(delayed(_sample_batch)(n, params.r, seed, lo, hi) for lo, hi in batches)
    samples = np.array([p for chunk in chunks for p in chunk])
    p_hat = float(np.median(samples))
    levels = sorted(quantiles)
    values = np.quantile(samples, levels)
    se = 0.0
    if trials > 1:
        se = float(math.sqrt(math.pi / 2) * np.std(samples, ddof=1) / math.sqrt(trials))
    estimate = ThresholdEstimate(
        n=n,
        r=params.r,
        trials=trials,
        seed=seed,
        p_hat=p_hat,
        quantiles=[(float(q), float(v)) for q, v in zip(levels, values)],
        standard_error=se,
        lambda_scale=p_hat * n ** (1 / float(lambda_(params.r))),
        samples=samples.tolist(),
    )
    logger.info(f"Threshold for n={n}, r={params.r}: p_hat={p_hat:.6f} over {trials} trials")
    return estimate


def percolation_curve(samples: Sequence[float], grid: Sequence[float]) -> List[Tuple[float, float]]:
    """Fraction of trials that percolate at each p of ``grid``."""
    ordered = np.sort(np.asarray(samples, dtype=float))
    if not len(ordered):
        return [(float(p), 0.0) for p in grid]
    counts = np.searchsorted(ordered, np.asarray(grid, dtype=float), side="right")
    return [(float(p), float(c) / len(ordered)) for p, c in zip(grid, counts)]
