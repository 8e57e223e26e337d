import csv
import json

import pytest

from panchroma.cli import main
from panchroma.hypercore import Hypergraph, k3, load_hypergraph, save_hypergraph


def run(argv):
    try:
        return main([str(a) for a in argv])
    except SystemExit as exc:
        return exc.code


@pytest.fixture
def k3_file(tmp_path):
    p = tmp_path / "k3.json"
    save_hypergraph(k3(), p)
    return p


def test_construct_thm5_with_provenance(tmp_path):
    out = tmp_path / "h.json"
    assert run(["construct", "thm5", "--n", 3, "--r", 2, "--out", out]) == 0
    H = load_hypergraph(out)
    assert (H.num_vertices, H.num_edges) == (12, 40)
    prov = json.loads(out.with_suffix(".provenance.json").read_text())
    assert prov["k"] == 6 and prov["kind"] == "thm5"


def test_construct_then_verify_exact_negative(tmp_path):
    out = tmp_path / "h.json"
    run(["construct", "thm5", "--n", 3, "--r", 2, "--out", out])
    res = tmp_path / "res.json"
    assert run(["verify", out, "--exact", "--r", 2, "--out", res]) == 1
    assert json.loads(res.read_text())["message"] == "no panchromatic coloring"


def test_construct_corollary_and_blowup(tmp_path):
    cor = tmp_path / "cor.json"
    assert run(["construct", "corollary", "--n", 4, "--r", 4, "--k", 2, "--out", cor]) == 0
    steps = json.loads(cor.with_suffix(".provenance.json").read_text())["steps"]
    assert steps[-1]["certifies"] == "p(4,4) <= 3"
    blown = tmp_path / "b.json"
    assert run(["construct", "blowup", "--input", cor, "--m", 2, "--out", blown]) == 0
    assert load_hypergraph(blown).uniformity == 8


def test_construct_random_turan_las_vegas(tmp_path):
    out = tmp_path / "t.json"
    assert run(["construct", "random-turan", "--n", 3, "--r", 3, "--num-vertices", 9,
                "--las-vegas", "--seed", 5, "--out", out]) == 0
    assert run(["verify", out, "--turan", "--r", 3]) == 0


def test_color_and_verify_round_trip(tmp_path, k3_file):
    single = tmp_path / "e.json"
    save_hypergraph(Hypergraph(5, 3, ((0, 1, 2), (2, 3, 4))), single)
    for method in ("greedy", "alteration", "simplex", "exact"):
        col = tmp_path / f"{method}.json"
        args = ["color", single, "--method", method, "--r", 2, "--out", col]
        if method == "simplex":
            args += ["--palette", 3]
        assert run(args) == 0, method
        assert run(["verify", single, "--coloring", col]) == 0
        assert json.loads(col.with_suffix(".stats.json").read_text())["success"]


def test_color_exit_codes(tmp_path, k3_file):
    assert run(["color", k3_file, "--method", "exact", "--r", 2, "--out", tmp_path / "c.json"]) == 1
    assert run(["color", k3_file, "--method", "alteration", "--r", 2, "--palette", 3,
                "--max-attempts", 5, "--out", tmp_path / "d.json"]) == 2


def test_verify_reports_violation(tmp_path, k3_file):
    c = tmp_path / "c.json"
    c.write_text(json.dumps({"r": 2, "assignment": [0, 1, 0]}))
    res = tmp_path / "v.json"
    assert run(["verify", k3_file, "--coloring", c, "--out", res]) == 1
    v = json.loads(res.read_text())["violation"]
    assert v == {"edge_index": 1, "edge": [0, 2], "missing_color": 1}


def test_budget_env_gives_undecided(tmp_path, monkeypatch):
    h = tmp_path / "h.json"
    run(["construct", "thm5", "--n", 4, "--r", 3, "--out", h])
    monkeypatch.setenv("PANCHROMA_NODE_BUDGET", "4")
    assert run(["verify", h, "--exact", "--r", 3]) == 2


def test_usage_errors(tmp_path, k3_file):
    assert run(["verify", k3_file, "--exact"]) == 64
    assert run(["color", tmp_path / "missing.json", "--r", 2]) == 64
    assert run(["construct", "thm5", "--n", 3, "--r", 2, "--t", 2]) == 64
    assert run(["bogus"]) == 64
    assert run(["bounds", "--constants", "c"]) == 64


def test_bounds_csv_and_figure(tmp_path):
    out = tmp_path / "b.csv"
    assert run(["bounds", "--n-range", "2:20", "--r-range", "2:20", "--out", out]) == 0
    rows = list(csv.DictReader(out.open()))
    assert len({(r["n"], r["r"]) for r in rows}) == 190
    assert out.with_suffix(".png").exists()
    js = tmp_path / "j.json"
    assert run(["bounds", "--n-range", "3", "--r-range", "2", "--format", "json",
                "--constants", "c=2", "--no-plot", "--out", js]) == 0
    assert json.loads(js.read_text())[0]["constants"]["c"] == 2.0
    assert not js.with_suffix(".png").exists()


def test_experiment_outputs(tmp_path):
    out = tmp_path / "exp.csv"
    args = ["experiment", "--method", "greedy", "--r", 2, "--n", 6, "--num-vertices", 15,
            "--edges", 3, "--trials", 10, "--seed", 9, "--out", out]
    assert run(args) == 0
    first = out.read_text()
    assert len(first.splitlines()) == 11
    assert json.loads(out.with_suffix(".summary.json").read_text())["success_rate"] == 1.0
    assert out.with_suffix(".png").exists()
    assert run(args) == 0 and out.read_text() == first
    assert run(["experiment", "--method", "greedy", "--r", 2, "--n", 6]) == 64
