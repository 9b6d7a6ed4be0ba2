import json
import math

import pytest

from quantree.cli import main
from quantree.experiments import build_paper_example
from quantree.graph import build_graph, write_graph


@pytest.fixture
def files(tmp_path):
    out = {}
    out["path"] = tmp_path / "path.json"
    write_graph(build_graph(3, [(0, 1, 1.0), (1, 2, 1.0)]), out["path"])
    out["s2"] = tmp_path / "s2.json"
    write_graph(build_paper_example(0.0).S2, out["s2"])
    out["unit"] = tmp_path / "unit.json"
    write_graph(build_graph(2, [(0, 1, 1.0)]), out["unit"])
    out["empty"] = tmp_path / "empty.json"
    out["empty"].write_text("")
    return out


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_solve_json(files, capsys):
    code, out = run(capsys, "solve", "--graph", files["path"], "--mu-max", 10)
    assert code == 0
    mus = [e["mu"] for e in json.loads(out.out)["eigenvalues"]]
    assert mus == pytest.approx([0.0, math.pi**2 / 4, math.pi**2], rel=1e-10)


def test_solve_csv(files, capsys):
    code, out = run(capsys, "solve", "--graph", files["path"], "--mu-max", 10, "--csv")
    lines = out.out.strip().splitlines()
    assert lines[0] == "index,mu,k,multiplicity"
    assert len(lines) == 4


def test_solve_extrema(files, capsys):
    code, out = run(capsys, "solve", "--graph", files["s2"], "--mu-max", 3, "--extrema", 2, "--functions")
    doc = json.loads(out.out)
    rep = doc["extrema"]["report"]
    assert {p["label"] for p in rep["max_points"] + rep["min_points"]} == {"v_u1", "v_u2", "v_d1", "v_d2"}
    assert doc["eigenpairs"][1]["multiplicity"] == 1


def test_solve_empty_file(files, capsys):
    code, out = run(capsys, "solve", "--graph", files["empty"], "--mu-max", 1)
    assert code == 2
    assert "error" in out.err


def test_solve_missing_file(tmp_path, capsys):
    code, _ = run(capsys, "solve", "--graph", tmp_path / "nope.json", "--mu-max", 1)
    assert code == 2


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve"])
    assert exc.value.code == 2


def test_repro(capsys):
    code, out = run(capsys, "repro", "--epsilon", 0.05)
    doc = json.loads(out.out)
    assert code == 0 and doc["passed"]
    assert doc["hotspots_at_boundary"]
    assert doc["extrema_distance"] == pytest.approx(1.8)


def test_repro_fails_past_threshold(capsys):
    code, out = run(capsys, "repro", "--epsilon", 0.2)
    assert code == 1
    assert json.loads(out.out)["ordering_holds"] is False


def test_repro_invalid_epsilon(capsys):
    code, _ = run(capsys, "repro", "--epsilon", 0.5)
    assert code == 2


def test_repro_csv(capsys):
    code, out = run(capsys, "repro", "--csv")
    assert out.out.startswith("key,value\n")
    assert "mu2_Gamma," in out.out


def test_survey(capsys):
    code, out = run(capsys, "survey", "--n", 4, "--seed", 3, "--max-edges", 6, "--inject-example")
    doc = json.loads(out.out)
    assert code == 0
    assert len(doc["records"]) == 5
    assert doc["records"][-1]["ratio"] == pytest.approx(0.9)
    assert doc["summary"]["failed"] == 0


def test_survey_csv(capsys):
    code, out = run(capsys, "survey", "--n", 2, "--seed", 3, "--max-edges", 4, "--csv")
    lines = out.out.strip().splitlines()
    assert lines[0].startswith("seed,n_vertices,n_edges")
    assert len(lines) == 3


def test_monotonicity(files, capsys):
    code, out = run(capsys, "monotonicity", "--graph", files["unit"], "--vertex", 0, "--length", 0.5)
    doc = json.loads(out.out)
    assert code == 0 and doc["strict_decrease"]


def test_byte_identical(files, capsys):
    outs = []
    for _ in range(2):
        run(capsys, "survey", "--n", 3, "--seed", 5, "--max-edges", 5)
        _, o = run(capsys, "solve", "--graph", files["s2"], "--mu-max", 20, "--extrema", 2)
        outs.append(o.out)
    assert outs[0] == outs[1]
    a = run(capsys, "survey", "--n", 3, "--seed", 5, "--max-edges", 5)[1].out
    b = run(capsys, "survey", "--n", 3, "--seed", 5, "--max-edges", 5)[1].out
    assert a == b
