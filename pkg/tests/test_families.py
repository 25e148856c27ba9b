import dataclasses

import pytest

from src.families.ht import (
    HtLayout,
    LayoutError,
    build_ht,
    build_ht_minus_e,
    build_kr_minus_e,
    build_path,
    ht_size,
)
from src.families.lh import (
    LhLayout,
    build_lh,
    default_permutations,
    is_prime,
    lh_closed_form,
    lh_size,
    next_index,
)
from src.families.reduced import has_four_cycle, has_triangle, reduced_graph
from src.families.verification import verify_ht, verify_lh
from src.graphs.graph import Graph, canonical_edge
from src.percolation.engine import ProcessParams, close


def test_kr_minus_e():
    g = build_kr_minus_e(5)
    assert g.n == 5
    assert g.edge_count == 9
    assert not g.has_edge(3, 4)
    assert close(g, ProcessParams(5)).tau == 1
    with pytest.raises(LayoutError):
        build_kr_minus_e(2)


def test_path():
    assert build_path(3).edges == ((0, 1), (1, 2), (2, 3))
    assert build_path(0) == Graph.empty(1)
    with pytest.raises(LayoutError):
        build_path(-1)


@pytest.mark.parametrize("r", [4, 5, 6])
@pytest.mark.parametrize("t", range(1, 9))
def test_ht_sizes_and_saturation(r, t):
    graph, layout = build_ht(r, t)
    assert (graph.n, graph.edge_count) == ht_size(r, t)
    trace = close(graph, ProcessParams(r))
    assert trace.tau == t
    assert trace.closure == Graph.complete(graph.n)
    assert verify_ht(graph, layout).passed


def test_ht_h1_is_kr_minus_e():
    graph, _ = build_ht(5, 1)
    assert graph == build_kr_minus_e(5)


def test_ht_rejects_bad_parameters():
    with pytest.raises(LayoutError):
        build_ht(3, 2)
    with pytest.raises(LayoutError):
        build_ht(5, 0)


@pytest.mark.parametrize("t", [1, 2, 4])
def test_ht_minus_e_is_inert(t):
    graph, layout, missing = build_ht_minus_e(5, t)
    assert not graph.has_edge(*missing)
    assert close(graph, ProcessParams(5)).tau == 0
    restored = close(graph.add_edges([missing]), ProcessParams(5))
    assert restored.tau == t


def test_ht_layout_round_trips_through_dict():
    _, layout = build_ht(5, 3)
    data = layout.to_dict()
    assert data["roles"]["0"] == "body"
    assert data["roles"]["6"] == "chain:3"
    assert HtLayout.from_dict(data) == layout


@pytest.mark.parametrize("r", [4, 5, 6])
@pytest.mark.parametrize("t", range(2, 9))
def test_ht_chain_vertex_joins_at_its_own_round(r, t):
    graph, layout = build_ht(r, t)
    trace = close(graph, ProcessParams(r))
    v_t = layout.chain[t - 1]
    absent = [canonical_edge(u, v_t) for u in layout.level(t - 2) if not graph.has_edge(u, v_t)]
    assert absent
    assert all(trace.times[e] == t for e in absent)
    for s in range(t + 1):
        assert trace.graph_at(s).is_clique(layout.level(s))


def test_verify_ht_reports_missing_predecessor():
    graph, layout = build_ht(5, 3)
    broken = graph.remove_edges([(layout.chain[1], layout.chain[2])])
    report = verify_ht(broken, layout)
    assert not report.passed
    assert "(ii)" in report.conditions()
    assert "(iii)" in report.conditions()


def test_verify_ht_reports_nested_neighbourhood():
    # r=4: v_3 re-joined to v_2 and v_2's body neighbour
    graph, layout = build_ht(4, 3)
    v2, v3 = layout.chain[1], layout.chain[2]
    body_of_v2 = [b for b in layout.body if graph.has_edge(v2, b)]
    own_body = [b for b in layout.body if graph.has_edge(v3, b)]
    rewired = graph.remove_edges([(v3, b) for b in own_body]).add_edges([(v3, b) for b in body_of_v2])
    report = verify_ht(rewired, layout)
    assert report.conditions() == ["(iv)"]


def test_verify_ht_reports_bad_layout():
    graph, layout = build_ht(5, 2)
    report = verify_ht(graph, dataclasses.replace(layout, chain=layout.chain[:1]))
    assert report.conditions() == ["layout"]


def test_permutations():
    assert is_prime(5)
    assert not is_prime(1)
    assert not is_prime(9)
    perms = default_permutations(3)
    assert perms[(2, 2)] == (1, 2, 3)
    assert all(sorted(p) == [1, 2, 3] for p in perms.values())


def test_next_index():
    assert next_index((1, 1), 3) == (1, 2)
    assert next_index((1, 3), 3) == (2, 1)
    assert next_index((3, 3), 3) is None


@pytest.mark.parametrize(
    "r,h,expected",
    [(5, 2, (26, 71, 10)), (5, 3, (56, 172, 27)), (6, 2, (34, 113, 10)), (7, 2, (42, 163, 10))],
)
def test_lh_sizes_and_saturation(r, h, expected):
    assert lh_size(r, h) == expected
    v, e, tau = lh_closed_form(r, h)
    assert (v, e + 1, tau) == expected
    graph, layout = build_lh(r, h)
    assert graph.n == expected[0] == layout.n
    assert graph.edge_count == expected[1]
    assert close(graph, ProcessParams(r)).tau == expected[2]


@pytest.mark.parametrize("r,h", [(5, 2), (5, 3), (6, 2), (6, 3), (7, 2)])
def test_verify_lh_accepts_canonical_build(r, h):
    graph, layout = build_lh(r, h)
    report = verify_lh(graph, layout)
    assert report.passed, report.violations[:3]


@pytest.mark.parametrize("r,h", [(5, 2), (5, 3), (6, 2), (6, 3), (7, 2)])
def test_reduced_graph_has_no_short_cycles(r, h):
    _, layout = build_lh(r, h)
    reduced = reduced_graph(layout)
    assert reduced.n == h * h
    assert reduced.edge_count == h * h * (h - 1) // 2
    assert not has_triangle(reduced)
    assert not has_four_cycle(reduced)


@pytest.mark.parametrize("h", [5, 7])
def test_reduced_graph_is_triangle_free_for_larger_primes(h):
    _, layout = build_lh(h + 1, h)
    reduced = reduced_graph(layout)
    assert reduced.edge_count == h * h * (h - 1) // 2
    assert not has_triangle(reduced)


def test_four_cycle_detection():
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert has_four_cycle(c4)
    assert not has_triangle(c4)
    assert not has_four_cycle(build_path(5))


def test_build_lh_rejects_bad_parameters():
    with pytest.raises(LayoutError):
        build_lh(4, 2)
    with pytest.raises(LayoutError):
        build_lh(5, 1)
    with pytest.raises(LayoutError):
        build_lh(5, 4)


def test_lh_layout_round_trips_through_dict():
    graph, layout = build_lh(5, 2)
    restored = LhLayout.from_dict(layout.to_dict())
    assert restored.sources == layout.sources
    assert restored.bridges == layout.bridges
    assert verify_lh(graph, restored).passed


def test_verify_lh_reports_restored_bridge_edge():
    graph, layout = build_lh(5, 2)
    bridge = layout.bridges[(1, 1)]
    report = verify_lh(graph.add_edges([bridge.missing_edges[1]]), layout)
    assert "bridge" in report.conditions()


def test_verify_lh_reports_overlapping_sources():
    graph, layout = build_lh(5, 3)
    source = layout.sources[(3, 1)]
    # borrow v_3 from the source that already lends v_2
    v2_host = next(s for s in layout.sources.values() if source.ht.chain[1] in s.in_layer)
    stolen = next(v for v in v2_host.in_layer if v != source.ht.chain[1])
    moved = dataclasses.replace(source, ht=dataclasses.replace(source.ht, chain=source.ht.chain[:2] + (stolen,)))
    sources = dict(layout.sources)
    sources[(3, 1)] = moved
    report = verify_lh(graph, dataclasses.replace(layout, sources=sources), check_coverage=False)
    assert not report.passed
    assert "source-source" in report.conditions()


@pytest.mark.parametrize("r,h", [(5, 2), (6, 2), (7, 2)])
def test_lh_dummy_bridge_fills_last(r, h):
    graph, layout = build_lh(r, h)
    bridge = layout.bridges[(h, h)]
    assert bridge.dummy
    head, tail = bridge.missing_edges
    assert tail == canonical_edge(*bridge.vertices[2:4])
    assert set(head).isdisjoint(tail)
    trace = close(graph, ProcessParams(r))
    assert trace.times[head] == trace.tau - 1
    assert trace.times[tail] == trace.tau == lh_closed_form(r, h)[2]


def test_lh_first_source_is_the_only_zero_source():
    _, layout = build_lh(5, 2)
    first = layout.sources[(1, 1)]
    assert first.missing_edge is None
    assert all(s.missing_edge is not None for idx, s in layout.sources.items() if idx != (1, 1))


@pytest.mark.parametrize("data", [{"r": 5}, {"r": 5, "h": 2, "n": 26, "sources": [{"index": [1]}], "bridges": [], "perms": {}}, []])
def test_lh_layout_rejects_malformed_dict(data):
    with pytest.raises(LayoutError):
        LhLayout.from_dict(data)


@pytest.mark.parametrize("data", [{"body": [0]}, {"r": "five", "body": [0, 1], "chain": [2]}, {"r": 5, "body": [], "chain": []}])
def test_ht_layout_rejects_malformed_dict(data):
    with pytest.raises(LayoutError):
        HtLayout.from_dict(data)
