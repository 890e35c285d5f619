import pytest

from flm.cli import main

from fixtures import GOLDEN, MODELS, TRANSIT_TRACE


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_child_labour(capsys):
    code, out, err = run(capsys, "validate", MODELS / "child_labour.flm")
    assert code == 0 and out == "ok: 1 space, 1 flcm model\n" and err == ""


def test_validate_with_model_option_and_records(capsys):
    code, out, _ = run(capsys, "validate", "--model", MODELS / "graphs.flm", "--format", "records")
    assert code == 0
    assert out.splitlines() == ["count=1 kind=space", "count=5 kind=graph", "count=3 kind=expert_collection"]


def test_compose_golden(capsys):
    code, out, _ = run(capsys, "compose", MODELS / "relation_eq.flm", "--a", "P", "--b", "Q", "--pair", "maxmin")
    assert code == 0
    assert out.encode() == (GOLDEN / "compose_P_Q_maxmin.txt").read_bytes()


def test_compose_flre_matches_compose(capsys):
    _, a, _ = run(capsys, "compose-flre", MODELS / "relation_eq.flm", "--p", "P", "--q", "Q")
    assert a.encode() == (GOLDEN / "compose_P_Q_maxmin.txt").read_bytes()


def test_run_flcm_transit(capsys):
    code, out, _ = run(capsys, "run-flcm", "--model", MODELS / "transit.flm", "--initial", "X", "--pair", "maxmax")
    lines = out.splitlines()
    assert code == 0
    assert lines[-1] == "fixed-point: often very_much some very_much often some very_much often"
    assert lines[2:5] == [f"X{k}: {s}" for k, s in enumerate(TRANSIT_TRACE, start=1)]


def test_run_flcm_inline_initial_records(capsys):
    code, out, _ = run(capsys, "run-flcm", MODELS / "child_labour.flm", "--initial", "(+often, 0, 0, 0, 0, 0)",
                       "--format", "records")
    lines = out.splitlines()
    assert code == 0
    assert lines[1] == "model=child_labour state=+often,0,0,+often,+often,0 step=1"
    assert lines[-1].startswith("iterations=4 model=child_labour pattern=fixed-point")
    _, again, _ = run(capsys, "run-flcm", MODELS / "child_labour.flm", "--initial", "(+often, 0, 0, 0, 0, 0)",
                      "--format", "records")
    assert again == out


def test_records_fields_sorted(capsys):
    for argv in (["classify-space", MODELS / "spaces.flm"], ["graph", MODELS / "graphs.flm", "--graph", "G"],
                 ["run-flrm", MODELS / "employee.flm", "--initial", "X"]):
        code, out, _ = run(capsys, *argv, "--format", "records")
        assert code == 0
        for line in out.splitlines():
            keys = [f.split("=", 1)[0] for f in line.split(" ")]
            assert keys == sorted(keys)


def test_run_flrm(capsys):
    code, out, _ = run(capsys, "run-flrm", MODELS / "employee.flm", "--initial", "X")
    assert code == 0
    assert out.splitlines()[2] == "Y0: good_gain gain gain gain gain"


def test_classify_space(capsys):
    code, out, _ = run(capsys, "classify-space", MODELS / "spaces.flm", "--space", "rating")
    assert code == 0
    assert out.splitlines() == ["space rating: poset, 10 terms", "  comparability: type-two", "  chain lattice: no",
                                "  lattice: no", "  exact meets and joins: no"]


def test_classify_topology(capsys):
    _, out, _ = run(capsys, "classify-topology", MODELS / "metric_signed.flm")
    assert out.splitlines()[0] == "metric F over size: overlapping"
    _, out, _ = run(capsys, "classify-topology", MODELS / "metric_discrete.flm", "--format", "records")
    assert out == "chain_connected=true lattice_connected=true metric=G space=grade topology=discrete\n"


def test_graph_and_experts(capsys):
    _, out, _ = run(capsys, "graph", MODELS / "graphs.flm", "--graph", "G")
    assert out.splitlines()[0] == "graph G: directed, 10 concepts, 12 edges, connected"
    _, out, _ = run(capsys, "graph", MODELS / "graphs.flm", "--experts", "panel")
    assert out.splitlines()[0] == "experts panel: 2-strong (mixed 2/3)"


def test_poly(capsys):
    _, out, _ = run(capsys, "poly", MODELS / "polys.flm", "--p", "p", "--q", "q")
    assert out.splitlines() == [
        "min(p, q) = better + very_bad x^1 + fair x^2  (degree 2)",
        "max(p, q) = good + bad x^1 + very_fair x^2 + best x^3 + good x^4  (degree 4)",
    ]


def test_feedforward(capsys):
    code, out, _ = run(capsys, "feedforward", MODELS / "network.flm", "--input", "input")
    assert code == 0 and out == "network net: high medium\n"


def test_relation_matrix(capsys):
    code, out, _ = run(capsys, "compose-flre", MODELS / "relation.flm", "--relation", "R")
    assert code == 0 and out.splitlines()[1].split() == "x1 good fair 0 0 0 0".split()


def test_diagnostics_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.flm"
    bad.write_text("space perf: chain 0 < bad < fair < good < best\nmatrix M over perf: 2x2 [good bad; fair]\n")
    code, out, err = run(capsys, "validate", bad)
    assert code == 1 and out == ""
    assert "2:36: error: ShapeMismatch" in err
    code, _, err = run(capsys, "validate", tmp_path / "missing.flm")
    assert code == 1 and "FileError" in err


def test_runtime_errors_exit_1(capsys, monkeypatch):
    code, _, err = run(capsys, "run-flcm", MODELS / "transit.flm", "--initial", "(often, bogus)")
    assert code == 1 and "UnknownTerm" in err
    monkeypatch.setenv("FLM_MAX_ITERS", "1")
    code, _, err = run(capsys, "run-flcm", MODELS / "transit.flm", "--initial", "X")
    assert code == 1 and "IterationCapExceeded" in err
    code, _, err = run(capsys, "compose", MODELS / "relation_eq.flm", "--a", "P", "--b", "NOPE")
    assert code == 1 and "UnknownName" in err


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["validate"],
    ["compose", str(MODELS / "relation_eq.flm"), "--a", "P"],
    ["compose", str(MODELS / "relation_eq.flm"), "--a", "P", "--b", "Q", "--pair", "sum"],
    ["run-flcm", str(MODELS / "transit.flm")],
    ["validate", "--format", "xml", str(MODELS / "transit.flm")],
])
def test_usage_errors_exit_2(capsys, argv):
    code = main(argv)
    capsys.readouterr()
    assert code == 2


def test_help_exits_0(capsys):
    assert main(["--help"]) == 0
    assert "run-flcm" in capsys.readouterr().out
