"""The dpz command line interface."""
import json

import pytest

from delpezzo.cli import EXIT_INPUT, EXIT_OK, build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_roots_text(capsys):
    code, out, _ = run(capsys, "roots", "4")
    assert code == EXIT_OK and out.strip() == "20"


def test_roots_json(capsys):
    code, out, _ = run(capsys, "roots", "6", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out) == {"n": 6, "roots": 72}


def test_order_csv(capsys):
    code, out, _ = run(capsys, "order", "4", "--format", "csv")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "n,order" and lines[1] == "4,120"


def test_classify_json_contents(capsys):
    code, out, _ = run(capsys, "classify", "5", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["n"] == 5 and len(data["classes"]) == 5
    by_label = {c["label"]: c for c in data["classes"]}
    assert by_label["m4"]["verdict"] == "Irreducible"
    assert by_label["m4"]["name"] == "DeJonquieres(3)"
    assert by_label["m1"]["verdict"] == "Reducible"
    assert by_label["m1"]["certificate"]["kind"] == "FixedNormPlus1"


def test_classify_rejects_out_of_range(capsys):
    code, _, err = run(capsys, "classify", "9")
    assert code == EXIT_INPUT and "error" in err


def test_model_geiser_matrix(capsys):
    code, out, _ = run(capsys, "model", "--name", "geiser", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["n"] == 7 and len(data["matrix"]) == 8


def test_model_dejonquieres_needs_n(capsys):
    code, _, err = run(capsys, "model", "--name", "dejonquieres")
    assert code == EXIT_INPUT and "--n" in err


def test_check_named_model_file(tmp_path, capsys):
    code, out, _ = run(capsys, "model", "--name", "dejonquieres", "--n", "5",
                       "--format", "json")
    matrix = json.loads(out)["matrix"]
    path = tmp_path / "dj5.json"
    path.write_text(json.dumps({"matrix": matrix, "basis": "HE"}))
    code, out, _ = run(capsys, "check", str(path), "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["status"] == "Irreducible"
    assert data["certificate"]["kind"] == "EvenFixedLatticeObstruction"


def test_check_quadric_basis_maps_witness_back(tmp_path, capsys):
    path = tmp_path / "q.json"
    path.write_text(json.dumps({
        "matrix": [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
        "basis": "quadric",
    }))
    code, out, _ = run(capsys, "check", str(path), "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["status"] == "Reducible"
    assert data["basis"] == "quadric"
    # S1 + S2 - e1 has square +1 in the hyperbolic-plus-blowup form
    assert data["certificate"]["witnesses"] == [[1, 1, -1]]


def test_decompose_file(tmp_path, capsys):
    path = tmp_path / "swap.json"
    path.write_text(json.dumps({
        "matrix": [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
        "basis": "HE",
    }))
    code, out, _ = run(capsys, "decompose", str(path), "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert len(data["steps"]) >= 1
    assert data["leaf"]["verdict"] == "Irreducible"


def test_defect_twist(capsys):
    code, out, _ = run(capsys, "defect", "--name", "bertini", "--twist")
    assert code == EXIT_OK and out.strip() == "-9"


def test_defect_requires_input(capsys):
    code, _, err = run(capsys, "defect")
    assert code == EXIT_INPUT


def test_bad_matrix_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "check", str(path))
    assert code == EXIT_INPUT


def test_non_involution_matrix_rejected(tmp_path, capsys):
    path = tmp_path / "rot.json"
    # order-3 rotation of E1,E2,E3
    path.write_text(json.dumps({
        "matrix": [[1, 0, 0, 0], [0, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0]],
        "basis": "HE",
    }))
    code, _, err = run(capsys, "check", str(path))
    assert code == EXIT_INPUT and "involution" in err


def test_unknown_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args(["frobnicate"])
    assert exc.value.code == EXIT_INPUT


def test_height_bound_env(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("DPZ_HEIGHT_BOUND", "3")
    path = tmp_path / "dj5.json"
    code, out, _ = run(capsys, "model", "--name", "dejonquieres", "--n", "5",
                       "--format", "json")
    matrix = json.loads(out)["matrix"]
    path.write_text(json.dumps({"matrix": matrix, "basis": "HE"}))
    code, out, _ = run(capsys, "check", str(path), "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["height_bound"] == 3
