"""
Source bookkeeping for a percolation run.

A 0-source is a maximal union of inclusion-maximal cliques that pairwise
share at least r-2 vertices and cover at least r vertices. Each source grows
an expansion: an infected edge whose witness K_{r-2} lies inside the
expansion joins it together with its endpoints. Expansions that come to
share r-2 vertices merge, and the sources whose expansions end up together
form a merger tree.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Set, Tuple

from pydantic import BaseModel, Field

from config.settings import META_CLIQUE_BUDGET
from src.graphs.graph import Graph, VertexSet, has_clique, iter_bits, maximal_clique_masks, to_mask, to_vertex_set
from src.percolation.engine import InfectionTrace, ProcessParams, close, round_graphs
from src.search.enumeration import BudgetExceededError
from src.utilities.helpers import format_vertex_set

logger = logging.getLogger(__name__)


class SourceRecord(BaseModel):
    id: int
    birth_time: int
    vertices: List[int]
    edge_count: int
    expansion: Dict[int, List[int]] = Field(default_factory=dict)
    active_steps: List[int] = Field(default_factory=list)
    inactive_steps: List[int] = Field(default_factory=list)
    depleted_intervals: List[Tuple[int, int]] = Field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def active_time(self) -> int:
        return len(self.active_steps)


class MergerEvent(BaseModel):
    time: int
    participants: Tuple[int, int]
    intersection_size: int


class MergerTree(BaseModel):
    members: List[int]
    events: List[MergerEvent] = Field(default_factory=list)
    final_expansion: List[int] = Field(default_factory=list)
    comprehensive: bool = False
    protracted: bool = False

    @property
    def merger_times(self) -> List[int]:
        return sorted(e.time for e in self.events)


class SourceAnalysis(BaseModel):
    """Everything the tracker learns from one run."""

    r: int
    tau: int
    records: List[SourceRecord]
    mergers: List[MergerEvent]
    trees: List[MergerTree]
    orphan_infections: int = 0
    overlapping_sources: bool = False
    multi_party_mergers: bool = False

    @property
    def has_inactive_time(self) -> bool:
        return any(rec.inactive_steps for rec in self.records)


def find_zero_sources(g: Graph, params: ProcessParams, budget: Optional[int] = None) -> List[VertexSet]:
    """
    0-sources of ``g``, ordered by their sorted vertex lists.

    Args:
        g: Graph to scan
        params: Process parameters
        budget: Cap on the number of maximal cliques of the clique meta-graph

    Returns:
        Distinct vertex sets with at least r vertices

    Raises:
        BudgetExceededError: If the meta-graph has more maximal cliques than ``budget``
    """
    budget = META_CLIQUE_BUDGET if budget is None else budget
    need = params.r - 2
    cliques = maximal_clique_masks(g)
    m = len(cliques)
    meta = [0] * m
    for a, b in combinations(range(m), 2):
        if (cliques[a] & cliques[b]).bit_count() >= need:
            meta[a] |= 1 << b
            meta[b] |= 1 << a
    groups = maximal_clique_masks(Graph(m, tuple(meta)))
    if len(groups) > budget:
        raise BudgetExceededError(f"{len(groups)} clique unions exceed the budget of {budget}", estimate=len(groups))
    found = set()
    for group in groups:
        union = 0
        for c in iter_bits(group):
            union |= cliques[c]
        if union.bit_count() >= params.r:
            found.add(union)
    return [to_vertex_set(mask) for mask in sorted(found, key=lambda x: list(iter_bits(x)))]


@dataclass
class _Draft:
    id: int
    birth: int
    mask: int
    edge_count: int
    expansion: Dict[int, int] = field(default_factory=dict)
    active: Set[int] = field(default_factory=set)
    merges: Set[int] = field(default_factory=set)


class _Tracker:
    def __init__(self, params: ProcessParams, budget: Optional[int]):
        self.params = params
        self.budget = budget
        self.drafts: List[_Draft] = []
        self.parent: Dict[int, int] = {}
        self.members: Dict[int, List[int]] = {}
        self.live: Dict[int, int] = {}
        self.seen: Set[int] = set()
        self.events: List[MergerEvent] = []
        self.overlapping = False
        self.multi_party = False
        self.absorbed: Dict[int, int] = {}

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def births(self, t: int, graph: Graph) -> None:
        need = self.params.r - 2
        for vertices in find_zero_sources(graph, self.params, budget=self.budget):
            mask = to_mask(vertices)
            if mask in self.seen:
                continue
            self.seen.add(mask)
            if t > 0:
                # a source meeting an expansion in r-2 vertices continues it
                hosts = [root for root, x in sorted(self.live.items()) if (mask & x).bit_count() >= need]
                if hosts:
                    self.live[hosts[0]] |= mask
                    continue
            sid = len(self.drafts)
            edges = sum((graph.rows[v] & mask).bit_count() for v in vertices) // 2
            self.drafts.append(_Draft(id=sid, birth=t, mask=mask, edge_count=edges))
            self.parent[sid] = sid
            self.members[sid] = [sid]
            self.live[sid] = mask
            logger.debug(f"Source {sid} born at t={t} on {format_vertex_set(vertices)}")

    def merge_pass(self, t: int, new_born: Set[int]) -> None:
        need = self.params.r - 2
        absorbed = self.absorbed
        merged = True
        while merged:
            merged = False
            for a, b in combinations(sorted(self.live), 2):
                size = (self.live[a] & self.live[b]).bit_count()
                if size < need:
                    continue
                if a in new_born and b in new_born or t == 0:
                    self.overlapping = True
                self.events.append(MergerEvent(time=t, participants=(a, b), intersection_size=size))
                self.parent[b] = a
                self.live[a] |= self.live.pop(b)
                self.members[a].extend(self.members.pop(b))
                absorbed[a] = absorbed.get(a, 1) + absorbed.pop(b, 1)
                for sid in self.members[a]:
                    self.drafts[sid].active.add(t)
                    self.drafts[sid].merges.add(t)
                merged = True
                break

    def end_round(self) -> None:
        if any(count > 2 for count in self.absorbed.values()):
            self.multi_party = True
        self.absorbed = {}

    def snapshot(self, t: int) -> None:
        for root, mask in self.live.items():
            for sid in self.members[root]:
                self.drafts[sid].expansion[t] = mask


def _steps(draft: _Draft) -> Tuple[List[int], List[int], List[Tuple[int, int]]]:
    active = sorted(t for t in draft.active if t >= 1)
    inactive = list(range(1, draft.birth + 1))
    depleted = []
    for left, right in zip(active, active[1:]):
        if right - left < 2:
            continue
        if right in draft.merges:
            depleted.append((left + 1, right - 1))
        else:
            inactive.extend(range(left + 1, right))
    return active, inactive, depleted


def _build_trees(tracker: _Tracker, tau: int) -> List[MergerTree]:
    trees = []
    for root in sorted(tracker.live):
        members = sorted(tracker.members[root])
        events = [e for e in tracker.events if tracker.find(e.participants[0]) == root]
        comprehensive = tau >= 1 and tau in tracker.drafts[root].active
        trees.append(
            MergerTree(
                members=members,
                events=sorted(events, key=lambda e: (e.time, e.participants)),
                final_expansion=list(iter_bits(tracker.live[root])),
                comprehensive=comprehensive,
            )
        )
    for tree in trees:
        if not tree.comprehensive:
            continue
        rivals = [o for o in trees if o.comprehensive and len(o.members) == len(tree.members)]
        mine = tree.merger_times
        tree.protracted = all(all(a >= b for a, b in zip(mine, o.merger_times)) for o in rivals)
    return trees


def analyze(
    g: Graph,
    params: ProcessParams,
    trace: Optional[InfectionTrace] = None,
    budget: Optional[int] = None,
) -> SourceAnalysis:
    """
    Replay a run and follow every source through it.

    Args:
        g: Initial graph
        params: Process parameters
        trace: Trace of ``close(g, params)`` if already computed
        budget: Meta-clique budget for the source searches

    Returns:
        Records, merger events and merger trees of the run
    """
    trace = trace or close(g, params)
    k = params.witness_size
    graphs = round_graphs(trace)
    tracker = _Tracker(params, budget)
    orphans = 0

    tracker.births(0, graphs[0])
    tracker.merge_pass(0, set(tracker.live))
    tracker.snapshot(0)
    tracker.end_round()
    for t in range(1, trace.tau + 1):
        prev = graphs[t - 1].rows
        before = dict(tracker.live)
        active_roots = set()
        for u, v in trace.infected_at(t):
            common = prev[u] & prev[v]
            hit = False
            for root, mask in before.items():
                if has_clique(prev, common & mask, k):
                    tracker.live[root] |= (1 << u) | (1 << v)
                elif not (mask >> u & 1 and mask >> v & 1):
                    continue
                active_roots.add(root)
                hit = True
            if not hit:
                orphans += 1
        for root in active_roots:
            for sid in tracker.members[root]:
                tracker.drafts[sid].active.add(t)
        tracker.merge_pass(t, set())
        known = set(tracker.parent)
        tracker.births(t, graphs[t])
        tracker.merge_pass(t, set(tracker.parent) - known)
        tracker.snapshot(t)
        tracker.end_round()

    records = []
    for draft in tracker.drafts:
        active, inactive, depleted = _steps(draft)
        records.append(
            SourceRecord(
                id=draft.id,
                birth_time=draft.birth,
                vertices=list(iter_bits(draft.mask)),
                edge_count=draft.edge_count,
                expansion={t: list(iter_bits(m)) for t, m in sorted(draft.expansion.items())},
                active_steps=active,
                inactive_steps=inactive,
                depleted_intervals=depleted,
            )
        )
    analysis = SourceAnalysis(
        r=params.r,
        tau=trace.tau,
        records=records,
        mergers=tracker.events,
        trees=_build_trees(tracker, trace.tau),
        orphan_infections=orphans,
        overlapping_sources=tracker.overlapping,
        multi_party_mergers=tracker.multi_party,
    )
    logger.info(
        f"Tracked {len(records)} sources, {len(tracker.events)} mergers, {len(analysis.trees)} merger trees (tau={trace.tau})"
    )
    return analysis


def track(g: Graph, params: ProcessParams) -> Tuple[List[SourceRecord], List[MergerEvent], List[MergerTree]]:
    analysis = analyze(g, params)
    return analysis.records, analysis.mergers, analysis.trees
