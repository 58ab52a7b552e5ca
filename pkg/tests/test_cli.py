import json

import pytest

from pappa import suites
from pappa.cli import main
from pappa.scalars import ParameterError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_tl_exact(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "tl", "--N", "3", "--m", "3", "--mode", "exact")
    report = json.loads(out)
    assert code == 0 and report["summary"]["pass"]
    assert any(r["identity"] == "E_i E_{i+-1} E_i = E_i" for r in report["records"])


def test_verify_unknown_suite_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--suite", "foo")
    assert code == 1 and "invalid choice" in err


def test_verify_out_of_bounds_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--suite", "pf", "--N", "6", "--mode", "exact")
    assert code == 1 and "outside" in err


def test_braid_exact_n6_falls_back(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "braid", "--N", "6", "--mode", "exact")
    report = json.loads(out)
    assert code == 0
    assert report["warnings"]
    notes = [r for r in report["records"] if r["anchor"] == "scalar fallback"]
    assert notes and "warning" in notes[0]
    assert {r["params"]["mode"] for r in report["records"] if r is not notes[0]} == {"approx"}


def test_verify_all_n2_reports_gaussian_order(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--N", "2", "--m", "1")
    report = json.loads(out)
    failed = [r for r in report["records"] if not r["pass"]]
    assert code == 2
    assert [(r["suite"], r["identity"]) for r in failed] == [("clifford", "G^N = 1")]
    assert failed[0]["known_failure"]


def test_report_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["verify", "--suite", "sft", "--N", "2-3", "--m", "1,2", "--zeta-sign", "both",
                     "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    recs = json.loads(a.read_text())["records"]
    assert all(set(r) >= {"suite", "anchor", "identity", "params", "pass", "max_deviation"} for r in recs)


def test_pauli_export_n2(capsys):
    code, out, _ = run(capsys, "pauli", "--N", "2", "--version", "q")
    mats = json.loads(out)["matrices"]
    assert code == 0
    y = [[complex(e["re"], e["im"]) for e in row] for row in mats["Y"]]
    assert y[0][1] == pytest.approx(-1j) and y[1][0] == pytest.approx(1j)


def test_pauli_model_export(capsys):
    code, out, _ = run(capsys, "pauli", "--N", "2", "--model", "q,4")
    data = json.loads(out)
    assert code == 0 and len(data["matrices"]["gamma"]) == 16


def test_braid_export_n3(capsys):
    code, out, _ = run(capsys, "braid", "--N", "3")
    data = json.loads(out)
    assert code == 0
    assert len(data["b_plus"]) == 9 and all(len(r) == 9 for r in data["b_minus"])


def test_braid_word(capsys):
    code, out, _ = run(capsys, "braid", "--N", "3", "--word", "1,1,1", "--strands", "2")
    assert code == 0 and json.loads(out)["writhe"] == 3
    code, _, _ = run(capsys, "braid", "--N", "3", "--word", "3", "--strands", "2")
    assert code == 1


def test_clifford_enumerate(capsys):
    code, out, _ = run(capsys, "clifford", "--N", "3", "--enumerate")
    data = json.loads(out)
    assert code == 0 and data["order"] == 216 == data["expected_order"] and data["generators_verified"]
    code, out, _ = run(capsys, "clifford", "--N", "2")
    assert code == 2 and not json.loads(out)["relations"]["G^N = 1"]


def test_rp_input(capsys, tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"N": 2, "m": 1, "entries": [{"row": [1], "col": [1], "re": 1.0, "im": 0.0}]}))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"N": 2, "m": 1, "entries": [{"row": [1], "col": [1], "re": -1.0, "im": 0.0}]}))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, out, _ = run(capsys, "rp", "--input", str(good), "--betas", "0,0.5,1")
    assert code == 0 and json.loads(out)["verdict"]
    code, out, _ = run(capsys, "rp", "--input", str(bad))
    assert code == 2 and not json.loads(out)["j0_psd"]
    assert run(capsys, "rp", "--input", str(broken))[0] == 1
    assert run(capsys, "rp", "--input", str(tmp_path / "missing.json"))[0] == 1
    assert run(capsys, "rp", "--input", str(good), "--betas", "-1")[0] == 1


def test_rp_ensemble(capsys):
    code, out, _ = run(capsys, "rp", "--N", "2", "--m", "1", "--ensemble", "10", "--seed", "3")
    assert code == 0 and json.loads(out)["count"] == 10
    assert run(capsys, "rp", "--N", "2")[0] == 1


def test_eval_tangle(capsys, tmp_path):
    good = tmp_path / "loop.tangle"
    good.write_text("N=2\ncup@1\nc^1@1\nc^1@2\ncap@1\n")
    code, out, _ = run(capsys, "eval-tangle", str(good))
    assert code == 0 and json.loads(out)["value"]["kind"] == "scalar"
    bad = tmp_path / "bad.tangle"
    bad.write_text("N=2\ncup@1\nfoo@1\n")
    code, _, err = run(capsys, "eval-tangle", str(bad))
    assert code == 1 and "line 3, column 1" in err


def test_suite_runner_bounds_and_order():
    with pytest.raises(ParameterError):
        suites.run_suite("pf", [8], [1], "approx")
    with pytest.raises(ParameterError):
        suites.run_suite("pf", [2], [4], "exact")
    recs = suites.run_suite("pauli", [3, 2], [1], "exact", (1, -1))
    keys = [(r["params"]["N"], r["params"]["zeta_sign"]) for r in recs]
    assert keys == sorted(keys)
    assert {k for k in keys} == {(2, -1), (2, 1), (3, 1)}
