"""
Audit of saturation-time and edge-count bounds on a concrete run.

Each bound is reported with its preconditions evaluated on the run. Bounds
whose preconditions fail are marked not applicable and never evaluated.
"""
import logging
import math
from typing import List, Optional

from pydantic import BaseModel, Field

from src.analysis.sources import MergerTree, SourceAnalysis, analyze
from src.graphs.graph import Graph, complement, diameter
from src.percolation.engine import InfectionTrace, ProcessParams, close

logger = logging.getLogger(__name__)

# two published constants for the r=4 edge bound; both are reported
CANDIDATE = "candidate constant"


class BoundCheck(BaseModel):
    name: str
    kind: str  # "tau" upper bound, "edges" lower bound, or "structure"
    applicable: bool
    holds: Optional[bool] = None
    lhs: Optional[float] = None
    rhs: Optional[float] = None
    note: str = ""


class AuditReport(BaseModel):
    r: int
    vertices: int
    edges: int
    tau: int
    percolates: bool
    source_count: int
    checks: List[BoundCheck] = Field(default_factory=list)
    tightest: Optional[str] = None

    def get(self, name: str) -> BoundCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)


def _tau_bound(name: str, applicable: bool, tau: int, rhs: float, note: str = "") -> BoundCheck:
    if not applicable:
        return BoundCheck(name=name, kind="tau", applicable=False, note=note)
    return BoundCheck(name=name, kind="tau", applicable=True, holds=tau <= rhs, lhs=tau, rhs=rhs, note=note)


def _edge_bound(name: str, applicable: bool, edges: int, rhs: float, note: str = "") -> BoundCheck:
    if not applicable:
        return BoundCheck(name=name, kind="edges", applicable=False, note=note)
    return BoundCheck(name=name, kind="edges", applicable=True, holds=edges >= rhs, lhs=edges, rhs=rhs, note=note)


def _largest(trees: List[MergerTree]) -> List[MergerTree]:
    if not trees:
        return []
    size = max(len(t.members) for t in trees)
    return [t for t in trees if len(t.members) == size]


def audit_bounds(
    g: Graph,
    params: ProcessParams,
    trace: Optional[InfectionTrace] = None,
    analysis: Optional[SourceAnalysis] = None,
) -> AuditReport:
    """
    Evaluate every known bound on one run.

    Args:
        g: Initial graph
        params: Process parameters
        trace: Precomputed closure trace
        analysis: Precomputed source analysis

    Returns:
        Report with one check per bound and the tightest applicable tau bound
    """
    trace = trace or close(g, params)
    analysis = analysis or analyze(g, params, trace=trace)
    r, n, e, tau = params.r, g.n, g.edge_count, trace.tau
    records = analysis.records
    sizes = {rec.id: rec.size for rec in records}
    edge_counts = {rec.id: rec.edge_count for rec in records}
    count = len(records)
    clean = not analysis.has_inactive_time and not analysis.overlapping_sources
    comprehensive = [t for t in analysis.trees if t.comprehensive]
    checks: List[BoundCheck] = []

    checks.append(_tau_bound("no_source", count == 0, tau, 0))
    single = count == 1 and r >= 4
    if single:
        checks.append(_tau_bound("one_source", True, tau, n - sizes[records[0].id] + 1))
        final = analysis.trees[0].final_expansion
        inside = sum(1 for i, u in enumerate(final) for v in final[i + 1 :] if trace.closure.has_edge(u, v))
        full = len(final) * (len(final) - 1) // 2
        checks.append(
            BoundCheck(name="one_source_clique", kind="structure", applicable=True, holds=inside == full, lhs=inside, rhs=full)
        )
        checks.append(_edge_bound("one_source_edges", True, e, edge_counts[records[0].id] + (tau - 1) * (r - 2)))
    else:
        checks.append(_tau_bound("one_source", False, tau, 0, note="needs exactly one source and r >= 4"))
        checks.append(BoundCheck(name="one_source_clique", kind="structure", applicable=False))
        checks.append(_edge_bound("one_source_edges", False, e, 0))
    checks.append(_tau_bound("at_most_one_source", count <= 1 and r >= 4, tau, n - (r - 1)))

    multi = count >= 2 and clean
    note = "needs two or more sources, no inactive time and no overlapping sources"
    checks.append(_tau_bound("multi_source_vertices", multi, tau, n - min(sizes.values(), default=0), note))
    checks.append(
        _edge_bound("multi_source_edges", multi, e, (tau - 1) * (r - 2) + min(edge_counts.values(), default=0), note)
    )

    two_party = multi and not analysis.multi_party_mergers
    protracted = _largest([t for t in comprehensive if t.protracted])
    largest = _largest(comprehensive)
    if two_party and protracted:
        # every largest protracted tree gives a valid bound
        rhs = min(n - sum(sizes[m] for m in t.members) + (len(t.members) - 1) * r for t in protracted)
        checks.append(_tau_bound("merger_tree_vertices", True, tau, rhs))
    else:
        checks.append(_tau_bound("merger_tree_vertices", False, tau, 0, "needs two-party mergers and a protracted tree"))
    if two_party and largest:
        pair = (r - 1) * (r - 2) // 2
        rhs = max(
            (tau - 1) * (r - 2) + sum(edge_counts[m] for m in t.members) - (len(t.members) - 1) * pair for t in largest
        )
        checks.append(_edge_bound("merger_tree_edges", True, e, rhs))
    else:
        checks.append(_edge_bound("merger_tree_edges", False, e, 0, "needs two-party mergers"))

    k4 = r == 4 and tau >= 1
    checks.append(_tau_bound("k4_vertices", k4, tau, n - 3))
    checks.append(_edge_bound("k4_edges_plus_3", k4, e, 2 * tau + 3, CANDIDATE))
    checks.append(_edge_bound("k4_edges_plus_6", k4, e, 2 * tau + 6, CANDIDATE))

    checks.append(_tau_bound("complement_edges", True, tau, complement(g).edge_count))
    checks.append(_tau_bound("pair_count", True, tau, n * (n - 1) // 2))
    d = diameter(g) if n >= 2 else math.inf
    log_ok = r == 3 and d != math.inf
    checks.append(_tau_bound("diameter_log", log_ok, tau, math.ceil(math.log2(d)) if log_ok else 0))

    applicable = [c for c in checks if c.kind == "tau" and c.applicable]
    tightest = min(applicable, key=lambda c: (c.rhs, c.name)).name if applicable else None
    report = AuditReport(
        r=r,
        vertices=n,
        edges=e,
        tau=tau,
        percolates=trace.percolates,
        source_count=count,
        checks=checks,
        tightest=tightest,
    )
    failed = [c.name for c in checks if c.holds is False and c.note != CANDIDATE]
    if failed:
        logger.warning(f"Bounds violated on {g!r}: {failed}")
    return report
