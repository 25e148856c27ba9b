import numpy as np
import pytest

from src.families.ht import build_ht, build_path
from src.graphs.graph import Graph, canonical_edge, diameter, is_k_connected, relabel
from src.percolation.engine import (
    ProcessParams,
    close,
    close_naive,
    close_rows,
    completable_edges,
    percolates,
    round_graphs,
    saturation_time,
    step,
)
from src.percolation.trace_io import trace_from_json, trace_to_dict, trace_to_json
from src.search.enumeration import code_to_graph, graph_count
from src.simulation.threshold import gnp


def _random_graph(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def test_params_reject_small_r():
    with pytest.raises(ValueError):
        ProcessParams(2)


def test_k4_minus_e_fills_in_one_round(k4_minus_e, k4):
    trace = close(k4_minus_e, k4)
    assert trace.tau == 1
    assert trace.percolates
    assert trace.events() == [(1, 2, 3)]


def test_trivial_graphs(k4):
    assert saturation_time(Graph.complete(6), k4) == 0
    assert percolates(Graph.complete(6), k4)
    empty = close(Graph.empty(5), k4)
    assert empty.tau == 0
    assert not empty.percolates
    assert empty.closure == Graph.empty(5)


@pytest.mark.parametrize("m,tau", [(1, 0), (2, 1), (4, 2), (5, 3), (8, 3), (9, 4)])
def test_triangle_process_on_paths(m, tau, k3):
    trace = close(build_path(m), k3)
    assert trace.tau == tau
    assert trace.percolates


@pytest.mark.parametrize("t", [1, 2, 3, 6])
def test_ht_saturates_at_t(t, k4):
    graph, _ = build_ht(4, t)
    trace = close(graph, k4)
    assert trace.tau == t
    assert trace.percolates


def test_two_components_stay_apart(two_k4_minus_e, k4):
    trace = close(two_k4_minus_e, k4)
    assert trace.tau == 1
    assert not trace.percolates
    assert trace.closure.edge_count == 12


@pytest.mark.parametrize("r", [3, 4, 5])
@pytest.mark.parametrize("seed", [1, 2, 3, 4])
def test_frontier_engine_matches_naive(r, seed):
    graph = _random_graph(11, 0.35, seed)
    params = ProcessParams(r)
    fast, slow = close(graph, params), close_naive(graph, params)
    assert fast.times == slow.times
    assert fast.tau == slow.tau
    assert fast.closure == slow.closure


def test_rounds_are_synchronous_steps():
    graph, _ = build_ht(5, 4)
    params = ProcessParams(5)
    trace = close(graph, params)
    rounds = round_graphs(trace)
    assert len(rounds) == trace.tau + 1
    assert rounds[0] == graph
    assert rounds[-1] == trace.closure
    for before, after in zip(rounds, rounds[1:]):
        assert before.is_subgraph_of(after)
        assert step(before, params) == after
    assert completable_edges(trace.closure, params) == set()


def test_close_rows_matches_close():
    graph = _random_graph(9, 0.4, 7)
    params = ProcessParams(4)
    rows = list(graph.rows)
    tau, edges = close_rows(rows, graph.n, params.witness_size)
    trace = close(graph, params)
    assert (tau, edges) == (trace.tau, trace.closure.edge_count)
    assert tuple(rows) == trace.closure.rows


def test_trace_json_restores_the_run(k4):
    graph, _ = build_ht(4, 3)
    trace = close(graph, k4)
    restored = trace_from_json(trace_to_json(trace))
    assert restored.times == trace.times
    assert restored.tau == trace.tau
    assert restored.closure == trace.closure
    assert trace_to_json(restored) == trace_to_json(trace)


def test_trace_dict_carries_the_run_and_nothing_else(k4):
    graph, _ = build_ht(4, 2)
    data = trace_to_dict(close(graph, k4))
    assert set(data) == {"n", "r", "initial", "events", "tau", "percolates"}


def _seeded_graphs(count: int, seed: int):
    rng = np.random.default_rng(seed)
    for index in range(count):
        n = int(rng.integers(2, 21))
        yield gnp(n, float(rng.uniform(0.15, 0.6)), seed=seed, index=index)


@pytest.mark.parametrize("count", [200, pytest.param(1000, marks=pytest.mark.slow)])
def test_frontier_engine_matches_naive_on_random_graphs(count):
    for index, graph in enumerate(_seeded_graphs(count, 5)):
        params = ProcessParams(4 + index % 2)
        fast, slow = close(graph, params), close_naive(graph, params)
        assert fast.times == slow.times, graph.edges
        assert fast.tau == slow.tau


@pytest.mark.parametrize("r", [3, 4, 5])
def test_frontier_engine_matches_naive_on_every_small_graph(r):
    params = ProcessParams(r)
    for n in range(2, 6):
        for code in range(graph_count(n)):
            graph = code_to_graph(n, code)
            assert close(graph, params).times == close_naive(graph, params).times, graph.edges


def test_closure_is_monotone():
    rng = np.random.default_rng(9)
    for index in range(80):
        n = int(rng.integers(4, 13))
        small = gnp(n, 0.3, seed=9, index=index)
        extra = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.15]
        large = small.add_edges(extra)
        params = ProcessParams(4 + index % 2)
        assert close(small, params).closure.is_subgraph_of(close(large, params).closure)


def test_relabeling_moves_infection_times_with_the_vertices():
    rng = np.random.default_rng(3)
    for index in range(40):
        n = int(rng.integers(4, 12))
        graph = gnp(n, 0.45, seed=3, index=index)
        perm = [int(v) for v in rng.permutation(n)]
        params = ProcessParams(4)
        trace = close(graph, params)
        moved = close(relabel(graph, perm), params)
        assert moved.tau == trace.tau
        assert moved.times == {canonical_edge(perm[u], perm[v]): t for (u, v), t in trace.times.items()}


def _check_triangle_process(n):
    params = ProcessParams(3)
    for code in range(graph_count(n)):
        graph = code_to_graph(n, code)
        trace = close(graph, params)
        connected = is_k_connected(graph, 1)
        assert trace.percolates == connected, graph.edges
        if connected:
            assert trace.tau == (diameter(graph) - 1).bit_length(), graph.edges


@pytest.mark.parametrize("n", [2, 3, 4, 5, pytest.param(6, marks=pytest.mark.slow)])
def test_triangle_process_percolates_exactly_on_connected_graphs(n):
    _check_triangle_process(n)


@pytest.mark.parametrize(
    "r,n", [(4, 4), (4, 5), (5, 5), pytest.param(4, 6, marks=pytest.mark.slow), pytest.param(5, 6, marks=pytest.mark.slow)]
)
def test_percolating_graphs_are_highly_connected(r, n):
    params = ProcessParams(r)
    for code in range(graph_count(n)):
        graph = code_to_graph(n, code)
        if percolates(graph, params):
            assert is_k_connected(graph, r - 2), graph.edges
