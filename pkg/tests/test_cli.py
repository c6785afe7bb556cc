import csv
import io
import json

import pytest

from madcolor.cli import COLUMNS, main, parse_params, run_experiment
from madcolor.generators import clique, tri_grid
from madcolor.io import format_lists, read_coloring, read_edge_list, write_edge_list


def _run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_generate_and_color(tmp_path, capsys):
    g = tmp_path / "g.txt"
    code, _ = _run(capsys, "generate", "--family", "tri_grid", "--params", "w=6,h=5", "--out", g)
    assert code == 0 and read_edge_list(g) == tri_grid(6, 5)
    out = tmp_path / "c.txt"
    code, cap = _run(capsys, "color", g, "--preset", "planar", "--seed", 3, "--out", out)
    assert code == 0
    rec = json.loads(cap.out)[0]
    assert rec["verdict"] == "pass" and rec["outcome"] == "coloring" and rec["d"] == 6
    assert rec["rounds"] == sum(rec[f"rounds_{p}"] for p in
                                ("clique", "classify", "ruling_forest", "plus_one", "greedy", "ball_solve"))
    col = read_coloring(out, 30)
    assert None not in col
    code, cap = _run(capsys, "verify", g, "--coloring", out, "--require-full")
    assert code == 0 and json.loads(cap.out)["violations"] == []


def test_color_clique(tmp_path, capsys):
    g = tmp_path / "k4.txt"
    write_edge_list(clique(4), g)
    code, cap = _run(capsys, "color", g, "--d", "3", "--lists", "uniform:3")
    rec = json.loads(cap.out)[0]
    assert code == 0 and rec["outcome"] == "clique" and rec["clique"] == [1, 2, 3, 4]
    assert rec["rounds"] == 2


def test_color_lists_file_and_csv(tmp_path, capsys):
    g = tmp_path / "g.txt"
    G = tri_grid(4, 4)
    write_edge_list(G, g)
    lf = tmp_path / "l.txt"
    lf.write_text(format_lists([frozenset(range(1, 7))] * G.n))
    code, cap = _run(capsys, "color", g, "--d", 6, "--lists", lf, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(cap.out)))
    assert code == 0 and tuple(rows[0]) == COLUMNS and rows[0]["verdict"] == "pass"


def test_brooks_infeasible(tmp_path, capsys):
    g = tmp_path / "k4.txt"
    write_edge_list(clique(4), g)
    code, cap = _run(capsys, "color", g, "--d", 3, "--algorithm", "brooks", "--lists", "uniform:3")
    assert code == 0 and json.loads(cap.out)[0]["outcome"] == "infeasible"


def test_nice_random(tmp_path, capsys):
    g = tmp_path / "g.txt"
    write_edge_list(tri_grid(5, 5), g)
    code, cap = _run(capsys, "color", g, "--algorithm", "nice")
    assert code == 0 and json.loads(cap.out)[0]["verdict"] == "pass"


def test_exit_codes(tmp_path, capsys):
    g = tmp_path / "g.txt"
    write_edge_list(tri_grid(4, 4), g)
    assert _run(capsys, "color", g, "--d", 2)[0] == 3
    assert _run(capsys, "color", g, "--d", 6, "--lists", "uniform:2")[0] == 3
    assert _run(capsys, "color", g, "--d", 6, "--round-cap", 5)[0] == 4
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n1 1\n")
    assert _run(capsys, "color", bad, "--d", 3)[0] == 3
    col = tmp_path / "c.txt"
    col.write_text("1 1\n2 1\n")
    code, cap = _run(capsys, "verify", g, "--coloring", col)
    assert code == 2 and json.loads(cap.out)["violations"] == [[1, 2]]


def test_verify_oracles(tmp_path, capsys):
    g = tmp_path / "g.txt"
    write_edge_list(clique(4), g)
    code, cap = _run(capsys, "verify", g, "--oracle", "chromatic", "--oracle", "mad",
                     "--oracle", "arboricity", "--oracle", "gallai")
    rep = json.loads(cap.out)
    assert code == 0 and rep["chromatic"] == 4 and rep["mad"] == "3"
    assert rep["arboricity_bound"] == 2 and rep["gallai_tree"] is True


def test_experiment_records(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _ = _run(capsys, "experiment", "--family", "grid", "--sizes", "8 8", "16 16",
                   "--preset", "planar", "--format", "json", "--out", out)
    recs = json.loads(out.read_text())
    assert code == 0 and len(recs) == 2 and all(r["verdict"] == "pass" for r in recs)
    assert [r["n"] for r in recs] == [64, 256]
    code, cap = _run(capsys, "experiment", "--family", "grid", "--preset", "planar")
    assert code == 0 and len(list(csv.DictReader(io.StringIO(cap.out)))) == 0


def test_run_experiment_config():
    recs = run_experiment({"family": "tri_grid", "params": [[5, 5]], "seeds": [0, 1], "d": 6})
    assert len(recs) == 2 and [r["seed"] for r in recs] == [0, 1]
    recs = run_experiment({"family": "clique", "params": [[4]], "d": 3, "lists": "uniform:3"})
    assert recs[0]["outcome"] == "clique"
    recs = run_experiment({"family": "cycle", "params": [[2]], "d": 3})
    assert recs[0]["verdict"] == "fail" and "MalformedInputError" in recs[0]["error"]
    assert run_experiment({"family": "grid", "params": [], "d": 4}) == []


def test_experiment_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"family": "hex_grid", "params": [{"w": 6, "h": 6}],
                              "preset": "planar-girth6", "seeds": [2]}))
    code, cap = _run(capsys, "experiment", "--config", cfg)
    rows = list(csv.DictReader(io.StringIO(cap.out)))
    assert code == 0 and rows[0]["d"] == "3" and rows[0]["verdict"] == "pass"


@pytest.mark.parametrize("family,key", [("klein_grid", "chromatic"), ("fisk", "odd_vertices"),
                                        ("h_graph", "instances")])
def test_witness(capsys, family, key):
    code, cap = _run(capsys, "witness", "--family", family)
    rep = json.loads(cap.out)
    assert code == 0 and rep["holds"] and key in rep


def test_parse_params():
    assert parse_params("w=3,h=4") == {"w": 3, "h": 4}
    assert parse_params("3 4") == [3, 4]
    assert parse_params("") == {}
