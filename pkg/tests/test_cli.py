import io
import json
import sys

import pytest

from scattered_lab.cli import main


def run_cli(argv, tmp_path=None):
    out, err = io.StringIO(), io.StringIO()
    old_out, old_err = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err
    try:
        code = main(argv)
    finally:
        sys.stdout, sys.stderr = old_out, old_err
    return code, out.getvalue(), err.getvalue()


@pytest.fixture()
def specs(tmp_path):
    field = tmp_path / "f5n4.json"
    field.write_text(json.dumps({"p": 5, "e": 1, "n": 4, "seed": 0}))
    poly = tmp_path / "pr.json"
    poly.write_text(json.dumps({"coeffs": ["0", "1", "0", "0"]}))
    return field, poly, tmp_path


def test_analyze_scatter_stabilizer(specs):
    field, poly, _ = specs
    code, out, _ = run_cli(["analyze", "--field", str(field), "--poly", str(poly),
                            "--tasks", "scatter,stabilizer"])
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["tasks"]["scatter"]["scattered"] is True
    assert doc["tasks"]["stabilizer"]["order"] == 624
    assert doc["tasks"]["stabilizer"]["t"] == 4


def test_byte_identical_reports(specs):
    field, poly, _ = specs
    args = ["analyze", "--field", str(field), "--poly", str(poly),
            "--tasks", "scatter,stabilizer,mrd", "--emit-points"]
    _, out1, _ = run_cli(args)
    _, out2, _ = run_cli(args)
    assert out1 == out2


def test_emitted_poly_reparses(specs):
    field, poly, tmp = specs
    code, out, _ = run_cli(["standard-form", "--field", str(field), "--poly", str(poly)])
    assert code == 0
    doc = json.loads(out)
    h = doc["tasks"]["standard-form"]["h"]
    poly2 = tmp / "h.json"
    poly2.write_text(json.dumps({"coeffs": h}))
    code2, out2, _ = run_cli(["scatter", "--field", str(field), "--poly", str(poly2)])
    assert code2 == 0
    assert json.loads(out2)["tasks"]["scatter"]["scattered"] is True


def test_empty_tasks_parse_error(specs):
    field, poly, _ = specs
    code, _, err = run_cli(["analyze", "--field", str(field), "--poly", str(poly),
                            "--tasks", ""])
    assert code == 1
    assert json.loads(err)["error"]["code"] == "ParseError"


def test_unknown_task(specs):
    field, poly, _ = specs
    code, _, err = run_cli(["analyze", "--field", str(field), "--poly", str(poly),
                            "--tasks", "scatter,frobnicate"])
    assert code == 1
    assert json.loads(err)["error"]["code"] == "ParseError"


def test_small_q_refusal(tmp_path):
    field = tmp_path / "f3.json"
    field.write_text(json.dumps({"p": 3, "e": 1, "n": 4}))
    poly = tmp_path / "p.json"
    poly.write_text(json.dumps({"coeffs": ["0", "1", "0", "0"]}))
    code, _, err = run_cli(["plane", "--field", str(field), "--poly", str(poly)])
    assert code == 2
    assert json.loads(err)["error"]["code"] == "SmallQ"


def test_mrd_and_oracle(specs):
    field, poly, _ = specs
    code, out, _ = run_cli(["mrd", "--field", str(field), "--poly", str(poly),
                            "--oracle"])
    assert code == 0
    doc = json.loads(out)["tasks"]["mrd"]
    assert doc["min_distance"] == 3 and doc["is_mrd"] is True
    assert doc["matches_stabilizer"] is True


def test_plane_report(specs):
    field, poly, _ = specs
    code, out, _ = run_cli(["plane", "--field", str(field), "--poly", str(poly)])
    assert code == 0
    doc = json.loads(out)["tasks"]["plane"]
    assert doc["case"] == "ii"
    assert doc["homology_group_order"] == 156
    assert doc["elations"] == 0
    assert doc["andre_witness"] == "pseudoregulus"


def test_equiv_cli(specs, tmp_path):
    field, poly, _ = specs
    g = tmp_path / "g.json"
    # x^{q^3} is the inverse-branch partner of x^q: GL-equivalent
    g.write_text(json.dumps({"coeffs": ["0", "0", "0", "1"]}))
    code, out, _ = run_cli(["equiv", "--field", str(field), str(poly), str(g)])
    assert code == 0
    doc = json.loads(out)
    assert doc["equiv"]["equivalent"] is True
    code, out, _ = run_cli(["equiv", "--field", str(field), str(poly), str(g),
                            "--mode", "gammal"])
    assert json.loads(out)["equiv"]["equivalent"] is True


def test_families_cli():
    code, out, _ = run_cli(["families", "--family", "5", "--q", "5", "--t", "3",
                            "--s", "1", "--find-h", "--verify"])
    assert code == 0
    doc = json.loads(out)
    assert doc["instance"]["family"] == 5
    assert doc["verified"]["matches_prediction"] is True
    code, _, err = run_cli(["families", "--family", "2", "--q", "5", "--n", "4",
                            "--delta", "1"])
    assert code == 1
    assert json.loads(err)["error"]["code"] == "BadParams"


def test_threads_env(specs, monkeypatch):
    field, poly, _ = specs
    monkeypatch.setenv("SCATTERED_LAB_THREADS", "4")
    code, out, _ = run_cli(["scatter", "--field", str(field), "--poly", str(poly)])
    assert code == 0
    assert json.loads(out)["threads"] == 4


def test_corrupted_modulus_surfaces(tmp_path):
    field = tmp_path / "bad.json"
    # x^4 + 1 is reducible over F_5
    field.write_text(json.dumps({"p": 5, "e": 1, "n": 4, "modulus": [1, 0, 0, 0, 1]}))
    poly = tmp_path / "p.json"
    poly.write_text(json.dumps({"coeffs": ["0", "1", "0", "0"]}))
    code, _, err = run_cli(["scatter", "--field", str(field), "--poly", str(poly)])
    assert code == 1
    assert json.loads(err)["error"]["code"] == "BadElement"


def test_families_generate_verb():
    code, out, _ = run_cli(["families", "generate", "--family", "1",
                            "--q", "5", "--n", "4", "--s", "3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["instance"]["family"] == 1
    assert doc["instance"]["predicted_stabilizer"]["order"] == 624


def test_stabilizer_hashes_exposed(specs):
    field, poly, _ = specs
    code, out, _ = run_cli(["stabilizer", "--field", str(field), "--poly", str(poly)])
    assert code == 0
    doc = json.loads(out)["tasks"]["stabilizer"]
    assert len(doc["poly_hash"]) == 16
    assert len(doc["linear_set_hash"]) == 16
