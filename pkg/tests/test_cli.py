import json

import pytest

from percolate import parse_graph_input, run
from src.graphs.edge_list import GraphFormatError
from src.graphs.graph import Graph

K4_MINUS_E = "4 5;0 1;0 2;0 3;1 2;1 3"
CHAINED_TRIANGLES = "5 7;0 1;0 2;1 2;1 3;2 3;2 4;3 4"


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_parse_graph_input(tmp_path, k4_minus_e):
    assert parse_graph_input(K4_MINUS_E) == k4_minus_e
    assert parse_graph_input("4 5\\n0 1\\n0 2\\n0 3\\n1 2\\n1 3") == k4_minus_e
    assert parse_graph_input("3 0") == Graph.empty(3)
    path = tmp_path / "g.txt"
    path.write_text("4 5\n0 1\n0 2\n0 3\n1 2\n1 3\n", encoding="utf-8")
    assert parse_graph_input(str(path)) == k4_minus_e
    with pytest.raises(FileNotFoundError):
        parse_graph_input(str(tmp_path / "missing.txt"))
    with pytest.raises(GraphFormatError):
        parse_graph_input("3 2;0 1")


def test_close_json(capsys):
    assert run(["close", "--r", "4", "--graph", K4_MINUS_E, "--json"]) == 0
    data = _json(capsys)
    assert data["tau"] == 1
    assert data["events"] == [{"t": 1, "u": 2, "v": 3}]


def test_close_tmax_emits_a_round_graph(capsys):
    assert run(["close", "--r", "4", "--graph", K4_MINUS_E, "--tmax", "0"]) == 0
    assert capsys.readouterr().out == "4 5\n0 1\n0 2\n0 3\n1 2\n1 3\n"
    assert run(["close", "--r", "4", "--graph", K4_MINUS_E, "--tmax", "9"]) == 0
    assert capsys.readouterr().out.startswith("4 6\n")


def test_tau(capsys):
    assert run(["tau", "--r", "4", "--graph", K4_MINUS_E]) == 0
    assert capsys.readouterr().out == "1\n"
    assert run(["tau", "--r", "4", "--graph", K4_MINUS_E, "--json"]) == 0
    assert _json(capsys) == {"tau": 1}


def test_gen_writes_graph_and_layout(tmp_path, capsys):
    layout = tmp_path / "ht.json"
    assert run(["gen", "ht", "--r", "5", "--t", "2", "--layout", str(layout)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("6 12\n")
    data = json.loads(layout.read_text(encoding="utf-8"))
    assert data["chain"] == [4, 5]
    assert data["roles"]["5"] == "chain:2"


def test_gen_path_and_missing_flags(capsys):
    assert run(["gen", "path", "--m", "2"]) == 0
    assert capsys.readouterr().out == "3 2\n0 1\n1 2\n"
    assert run(["gen", "krminuse"]) == 2
    assert "--r" in capsys.readouterr().err


def test_gen_lh_then_verify_round_trip(tmp_path, capsys):
    graph, layout = tmp_path / "lh.txt", tmp_path / "lh.json"
    assert run(["gen", "lh", "--r", "5", "--h", "2", "--out", str(graph), "--layout", str(layout)]) == 0
    assert graph.read_text(encoding="utf-8").startswith("26 71\n")
    capsys.readouterr()
    args = ["verify", "lh", "--r", "5", "--graph", str(graph), "--layout", str(layout), "--json"]
    assert run(args) == 0
    assert _json(capsys)["violations"] == []


def test_verify_canonical_member(capsys):
    assert run(["verify", "ht", "--r", "5", "--t", "3", "--json"]) == 0
    data = _json(capsys)
    assert data["violations"] == []
    assert data["checks"] > 0


def test_verify_needs_layout_with_graph(capsys):
    assert run(["verify", "ht", "--r", "5", "--graph", K4_MINUS_E]) == 2


@pytest.mark.parametrize("family,text", [("lh", "{\"r\": 5}"), ("ht", "{\"body\": [0]}"), ("lh", "not json")])
def test_verify_rejects_a_malformed_layout(tmp_path, capsys, family, text):
    layout = tmp_path / "layout.json"
    layout.write_text(text, encoding="utf-8")
    assert run(["verify", family, "--r", "5", "--graph", K4_MINUS_E, "--layout", str(layout)]) == 2


def test_sources_and_audit(capsys):
    assert run(["sources", "--r", "4", "--graph", K4_MINUS_E, "--json"]) == 0
    assert len(_json(capsys)["records"]) == 1
    assert run(["audit", "--r", "4", "--graph", K4_MINUS_E, "--json"]) == 0
    data = _json(capsys)
    assert data["tau"] == 1
    assert data["source_count"] == 1


def test_budget_refusal_exits_with_one(capsys):
    assert run(["sources", "--r", "4", "--graph", CHAINED_TRIANGLES, "--budget", "1"]) == 1
    assert "Refused" in capsys.readouterr().err
    assert run(["search", "taumax", "--n", "9", "--r", "4"]) == 1


def test_search(capsys):
    assert run(["search", "taumax", "--n", "5", "--r", "4", "--workers", "1", "--json"]) == 0
    data = _json(capsys)
    assert data["value"] == 2
    assert data["objective"] == "max_tau"
    assert run(["search", "minedges", "--n", "5", "--r", "4"]) == 2


def test_threshold_csv_and_curve(capsys):
    base = ["threshold", "--n", "8", "--r", "4", "--trials", "6", "--seed", "2", "--workers", "1"]
    assert run(base + ["--csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "q,p"
    assert len(lines) == 6
    assert run(base + ["--curve", "4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "p,fraction"
    assert lines[1] == "0,0"
    assert lines[-1] == "1,1"


def test_bad_input_exits_with_two(capsys):
    assert run(["close", "--r", "4", "--graph", "3 2;0 1"]) == 2
    assert run(["close", "--r", "4", "--graph", "missing-graph.txt"]) == 2
    assert run(["close", "--r", "2", "--graph", K4_MINUS_E]) == 2
    assert run(["gen", "ht", "--r", "3", "--t", "2"]) == 2
    assert "Error" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert run([]) == 2
    assert run(["close", "--graph", K4_MINUS_E]) == 2
    assert run(["gen", "cube"]) == 2


def test_version(capsys):
    assert run(["--version"]) == 0
    assert "format 1" in capsys.readouterr().out


def test_out_writes_a_file(tmp_path, capsys):
    target = tmp_path / "trace.json"
    assert run(["close", "--r", "4", "--graph", K4_MINUS_E, "--json", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["tau"] == 1
