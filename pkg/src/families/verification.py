"""
Structural verifiers for H_t and L_h.

Violations are collected into a report rather than raised, so a broken
instance can be inspected in full.
"""
import logging
from itertools import combinations
from typing import Iterable, List

from pydantic import BaseModel, Field

from src.families.ht import HtLayout, ht_size
from src.families.lh import LhLayout, next_index
from src.graphs.graph import Edge, Graph, iter_bits, to_mask

logger = logging.getLogger(__name__)


class Violation(BaseModel):
    condition: str
    detail: str


class VerificationReport(BaseModel):
    """Outcome of a structural check."""

    subject: str
    checks: int = 0
    violations: List[Violation] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def check(self, ok: bool, condition: str, detail: str) -> None:
        self.checks += 1
        if not ok:
            self.violations.append(Violation(condition=condition, detail=detail))

    def extend(self, other: "VerificationReport", prefix: str) -> None:
        self.checks += other.checks
        self.violations.extend(
            Violation(condition=v.condition, detail=f"{prefix}: {v.detail}") for v in other.violations
        )

    def conditions(self) -> List[str]:
        return sorted({v.condition for v in self.violations})


def _names(mask: int) -> List[int]:
    return list(iter_bits(mask))


def verify_ht(g: Graph, layout: HtLayout) -> VerificationReport:
    """
    Check conditions (i)-(iv) of H_t for every level and the size formulas.

    Args:
        g: Graph containing the H_t member (extra vertices are ignored)
        layout: Claimed vertex roles

    Returns:
        Report with one entry per violated condition
    """
    report = VerificationReport(subject=f"H_{layout.t} (r={layout.r})")
    r, t = layout.r, layout.t
    vertices = layout.vertices
    report.check(
        len(layout.body) == r - 1 and len(layout.chain) == t and len(set(vertices)) == len(vertices),
        "layout",
        f"expected {r - 1} body and {t} chain vertices, all distinct",
    )
    report.check(all(0 <= v < g.n for v in vertices), "layout", f"vertex outside [0, {g.n})")
    if not report.passed:
        return report
    report.check(layout.v0 in layout.body, "layout", f"v0={layout.v0} is not a body vertex")
    report.check(g.is_clique(layout.body), "body", f"body {list(layout.body)} is not a clique")

    for s in range(1, t + 1):
        vs = layout.chain[s - 1]
        prev = layout.v0 if s == 1 else layout.chain[s - 2]
        below = to_mask(layout.level(s - 1))
        seen = g.rows[vs] & below
        report.check(bool(seen >> prev & 1), "(ii)", f"v_{s}={vs} is not joined to its predecessor {prev}")
        report.check(
            seen.bit_count() == r - 2,
            "(iii)",
            f"v_{s}={vs} has {seen.bit_count()} neighbours in V_{s - 1}, expected {r - 2}: {_names(seen)}",
        )
        if s >= 2:
            rest = seen & ~(1 << prev)
            report.check(
                rest & ~g.rows[prev] != 0,
                "(iv)",
                f"N(v_{s}) minus v_{s - 1} = {_names(rest)} lies inside N(v_{s - 1})",
            )
        level = to_mask(layout.level(s))
        edges_here = sum((g.rows[v] & level).bit_count() for v in iter_bits(level)) // 2
        _, expected = ht_size(r, s)
        report.check(edges_here == expected, "(i)", f"V_{s} induces {edges_here} edges, expected {expected}")
    return report


def _missing_pairs(g: Graph, vertices: Iterable[int]) -> List[Edge]:
    return [(a, b) for a, b in combinations(sorted(vertices), 2) if not g.has_edge(a, b)]


def _verify_permutations(layout: LhLayout, report: VerificationReport) -> None:
    h, perms = layout.h, layout.perms
    for i1 in range(1, h + 1):
        for i2 in range(1, i1 + 1):
            p = perms.get((i1, i2))
            report.check(
                p is not None and sorted(p) == list(range(1, h + 1)),
                "permutation",
                f"pi_{i1}^{i2} is not a permutation of 1..{h}",
            )
        report.check(
            tuple(perms.get((i1, i1), ())) == tuple(range(1, h + 1)),
            "permutation",
            f"pi_{i1}^{i1} is not the identity",
        )
    if not report.passed:
        return
    for i1 in range(2, h + 1):
        for i2 in range(1, i1):
            for i3 in range(2, i2 + 1):
                for j1 in range(1, h + 1):
                    for j2 in range(1, h + 1):
                        if perms[(i1, i3)][j1 - 1] != perms[(i2, i3)][j2 - 1]:
                            continue
                        for i4 in range(1, i3):
                            report.check(
                                perms[(i1, i4)][j1 - 1] != perms[(i2, i4)][j2 - 1],
                                "permutation",
                                f"sources ({i1},{j1}) and ({i2},{j2}) meet in layers {i3} and {i4}",
                            )


def verify_lh(g: Graph, layout: LhLayout, check_coverage: bool = True) -> VerificationReport:
    """
    Check an L_h instance against its layout.

    Covers every pairwise intersection, each source against H_i - e, each
    bridge against K_r minus its missing edges, the chain placement, and the
    permutation compatibility condition.
    """
    report = VerificationReport(subject=f"L_{layout.h} (r={layout.r})")
    r, h = layout.r, layout.h
    report.check(g.n == layout.n, "layout", f"graph has {g.n} vertices, layout {layout.n}")
    if not report.passed:
        return report

    _verify_permutations(layout, report)

    for idx, source in sorted(layout.sources.items()):
        i, j = idx
        present = g.induced(source.vertices)
        if source.missing_edge is not None:
            a, b = source.missing_edge
            report.check(not g.has_edge(a, b), "source", f"source {idx} still has its missing edge {(a, b)}")
            report.check(a in source.ht.body and b in source.ht.body, "source", f"missing edge of {idx} is not a body edge")
            present = present.add_edges([source.missing_edge])
        report.extend(verify_ht(present, source.ht), f"source {idx}")
        for t in range(2, i + 1):
            k = i - t + 1
            perm = layout.perms.get((i, k))
            if perm is None:
                continue
            host = layout.sources.get((k, perm[j - 1]))
            report.check(
                host is not None and source.ht.chain[t - 1] in host.in_layer,
                "chain",
                f"v_{t} of source {idx} is not taken from source {(k, perm[j - 1])}",
            )

    for idx, bridge in sorted(layout.bridges.items()):
        missing = _missing_pairs(g, bridge.vertices)
        report.check(len(bridge.vertices) == r, "bridge", f"bridge {idx} has {len(bridge.vertices)} vertices")
        report.check(
            sorted(missing) == sorted(bridge.missing_edges),
            "bridge",
            f"bridge {idx} misses {missing}, expected {sorted(bridge.missing_edges)}",
        )
        report.check(
            len(bridge.missing_edges) == 2 and not set(bridge.missing_edges[0]) & set(bridge.missing_edges[1]),
            "bridge",
            f"bridge {idx} does not miss two vertex-disjoint edges",
        )

    parts = [("source", idx, s.vertices) for idx, s in sorted(layout.sources.items())]
    parts += [("bridge", idx, frozenset(b.vertices)) for idx, b in sorted(layout.bridges.items())]
    for (kind_a, a, va), (kind_b, b, vb) in combinations(parts, 2):
        shared = va & vb
        if kind_a == kind_b:
            report.check(len(shared) <= 1, f"{kind_a}-{kind_b}", f"{kind_a}s {a} and {b} share {sorted(shared)}")
            continue
        source_idx, bridge_idx = (a, b) if kind_a == "source" else (b, a)
        neighbouring = source_idx == bridge_idx or next_index(bridge_idx, h) == source_idx
        if neighbouring:
            report.check(
                len(shared) == 2,
                "source-bridge",
                f"source {source_idx} and bridge {bridge_idx} share {sorted(shared)}, expected 2 vertices",
            )
            if len(shared) == 2:
                x, y = sorted(shared)
                report.check(not g.has_edge(x, y), "stable", f"intersection {(x, y)} of {source_idx} and {bridge_idx} is an edge")
        else:
            report.check(
                len(shared) <= 1,
                "source-bridge",
                f"source {source_idx} and bridge {bridge_idx} share {sorted(shared)}",
            )

    if check_coverage:
        covered = set()
        for _, _, vs in parts:
            mask = to_mask(vs)
            for v in vs:
                covered.update((min(v, w), max(v, w)) for w in iter_bits(g.rows[v] & mask))
        stray = [e for e in g.edges if e not in covered]
        report.check(not stray, "coverage", f"edges outside every source and bridge: {stray[:5]}")

    logger.info(f"Verified {report.subject}: {report.checks} checks, {len(report.violations)} violations")
    return report
