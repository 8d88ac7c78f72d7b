import json

import pytest

from fewweight import cli
from fewweight.cli import main
from fewweight.formulas import PredictedEnumerator
from fewweight.serialize import read_matrix

GAB = ["--p", "2", "--n", "3", "--r", "3"]


def test_construct_to_file(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert main(["construct", *GAB, "-o", str(out)]) == 0
    assert "N=7 r=3 rank=3 field=GF(2^3) scattered=true" in capsys.readouterr().out
    G = read_matrix(out)
    assert (G.r, G.N) == (3, 7)


def test_construct_to_stdout(capsys):
    assert main(["construct", *GAB]) == 0
    cap = capsys.readouterr()
    assert cap.out.startswith("# fewweight generator matrix")
    assert "scattered=true" in cap.err


def test_construct_direct_sum(capsys):
    assert main(["construct", "--family", "direct-sum", "--p", "2", "--n", "3", "--t", "2"]) == 0
    assert "N=63 r=6 rank=6" in capsys.readouterr().err


def test_construct_bad_family_params(capsys):
    assert main(["construct", "--family", "twisted", "--p", "2", "--n", "4", "--r", "3", "--delta", "5"]) == 2
    assert "N(delta)" in capsys.readouterr().err
    assert main(["construct", "--family", "direct-sum", "--p", "2", "--n", "3"]) == 2
    assert main(["construct", "--p", "4", "--n", "3", "--r", "3"]) == 2
    assert main(["construct", "--p", "2", "--n", "3"]) == 2  # missing --r


def test_verify_pass_and_deterministic(capsys):
    assert main(["verify", *GAB]) == 0
    first = capsys.readouterr().out
    assert "verdict: PASS" in first and "elapsed" not in first
    assert main(["verify", *GAB, "--workers", "2"]) == 0
    assert capsys.readouterr().out == first


def test_verify_report_file_and_timing(tmp_path, capsys):
    rep = tmp_path / "r.txt"
    assert main(["verify", *GAB, "--report", str(rep), "--timing"]) == 0
    assert "elapsed:" in rep.read_text()
    assert rep.read_text() == capsys.readouterr().out


def test_verify_direct_sum(capsys):
    assert main(["verify", "--family", "direct-sum", "--p", "2", "--n", "3", "--t", "2",
                 "--method", "direct"]) == 0
    out = capsys.readouterr().out
    assert "prediction: h=2" in out and "234360" in out


def test_verify_mismatch_exit_1(monkeypatch, capsys):
    def wrong(n, r, q):
        return PredictedEnumerator(7, 3, 8, {0: 1, 4: 50, 6: 293, 7: 168}, source="test")
    monkeypatch.setattr(cli, "predict_full_scattered", wrong)
    assert main(["verify", *GAB]) == 1
    assert "FAIL (weight 4: predicted 50, computed 49)" in capsys.readouterr().out


def test_verify_invalid_prediction_request():
    assert main(["verify", *GAB, "--predict-r", "4"]) == 2
    assert main(["verify", *GAB, "--h", "5"]) == 2


def test_budget_exceeded_exit_2(capsys):
    assert main(["verify", *GAB, "--budget", "10"]) == 2
    assert "budget" in capsys.readouterr().err


def test_predict_full(capsys):
    assert main(["predict", *GAB]) == 0
    out = capsys.readouterr().out
    assert "     4  49\n     6  294\n     7  168" in out
    assert "almost_mds: true" in out and "q_divisible: false" in out


def test_predict_h2(capsys):
    assert main(["predict", "--h", "2", "--p", "2", "--n", "3", "--r", "6"]) == 0
    out = capsys.readouterr().out
    assert "    32  441" in out and "q_divisible: true" in out
    assert main(["predict", "--h", "2", "--p", "2", "--n", "2", "--r", "3"]) == 2
    assert "n >= 3" in capsys.readouterr().err
    assert main(["predict", "--p", "2", "--n", "3"]) == 2


def test_enumerate_from_constructed_matrix(tmp_path, capsys):
    mat = tmp_path / "g.txt"
    assert main(["construct", *GAB, "-o", str(mat)]) == 0
    for method in ("direct", "geometric", "both"):
        out = tmp_path / f"{method}.json"
        assert main(["enumerate", "--matrix", str(mat), "--method", method, "-o", str(out)]) == 0
        assert json.loads(out.read_text())["weights"] == [[0, 1], [4, 49], [6, 294], [7, 168]]


def test_enumerate_errors(tmp_path, capsys):
    mat = tmp_path / "g.txt"
    assert main(["construct", *GAB, "-o", str(mat)]) == 0
    lines = mat.read_text().splitlines()
    bad = tmp_path / "bad.txt"
    bad.write_text("\n".join(lines[:-1]) + "\n")
    assert main(["enumerate", "--matrix", str(bad)]) == 2
    assert "expected 3 matrix rows, found 2" in capsys.readouterr().err
    assert main(["enumerate", "--matrix", str(tmp_path / "missing.txt")]) == 2
    nosource = tmp_path / "nosrc.txt"
    nosource.write_text("\n".join(ln for ln in lines if not ln.startswith("source")) + "\n")
    assert main(["enumerate", "--matrix", str(nosource)]) == 0
    assert main(["enumerate", "--matrix", str(nosource), "--method", "geometric"]) == 2


def test_usage_errors():
    assert main([]) == 2
    assert main(["construct", "--family", "nope", *GAB]) == 2
    assert main(["--version"]) == 0


def test_run_exits_with_status(monkeypatch):
    monkeypatch.setattr("sys.argv", ["fewweight", "predict", *GAB])
    with pytest.raises(SystemExit) as exc:
        cli.run()
    assert exc.value.code == 0
