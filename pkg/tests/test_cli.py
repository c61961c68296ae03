import json
from pathlib import Path

import pytest

from browderkit.cli import main

DATA = Path(__file__).parent / "data"


def spec(name):
    return str(DATA / f"{name}.json")


def test_classify_shift(capsys):
    assert main(["classify", spec("shift")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["class"]["left_invertible"] == "yes" and out["class"]["browder"] == "no"
    assert out["fredholm"]["index"] == -1


def test_classify_with_lambda(capsys):
    assert main(["classify", spec("identity"), "--lambda", "1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["class"]["fredholm"] == "no"


def test_classify_circle_zero_and_parse_errors(capsys):
    assert main(["classify", spec("circle_zero")]) == 0
    assert main(["classify", spec("broken")]) == 2
    assert main(["classify", str(DATA / "missing.json")]) == 2


def test_complete_and_verify(tmp_path, capsys):
    assert main(["complete", spec("shift"), spec("backshift"), "--out", str(tmp_path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["verified"] is True
    assert (tmp_path / "C.json").exists()
    assert main(["verify", str(tmp_path / "certificate.json")]) == 0
    assert json.loads(capsys.readouterr().out)["verified"] is True


def test_verify_rejects_tampered_certificate(tmp_path, capsys):
    main(["complete", spec("shift"), spec("backshift"), "--out", str(tmp_path)])
    path = tmp_path / "certificate.json"
    cert = json.loads(path.read_text())
    cert["corner"] = [[["0", "0"] for _ in row] for row in cert["corner"]]
    path.write_text(json.dumps(cert))
    capsys.readouterr()
    assert main(["verify", str(path)]) == 1
    assert "corner not invertible" in json.loads(capsys.readouterr().out)["reasons"]


def test_complete_invertible_kind(tmp_path, capsys):
    args = ["complete", spec("shift_minus_half"), spec("backshift_minus_half"),
            "--kind", "invertible", "--out", str(tmp_path)]
    assert main(args) == 0
    assert json.loads(capsys.readouterr().out)["kind"] == "invertible_C"


def test_complete_precondition_failure(tmp_path, capsys):
    assert main(["complete", spec("shift"), spec("shift"), "--out", str(tmp_path)]) == 4
    assert "condition (c)" in capsys.readouterr().err


def test_scan_outputs(tmp_path, capsys):
    args = ["scan", spec("shift"), spec("backshift"), "--region", "-2,2,-2,2", "--step", "1/2",
            "--format", "csv", "--format", "svg", "--format", "json-report", "--out", str(tmp_path),
            "--threads", "1"]
    assert main(args) == 0
    assert "yes: 4 no: 77 undecided: 0" in capsys.readouterr().out
    for name in ("scan.csv", "scan.svg", "scan.json"):
        assert (tmp_path / name).exists()


def test_scan_bad_region(tmp_path):
    assert main(["scan", spec("shift"), spec("backshift"), "--region", "1,2", "--out", str(tmp_path)]) == 2


def test_oracle_command(capsys):
    assert main(["oracle", "--suite", "lemma23", "--trials", "20", "--seed", "4"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["passed"] and out["seed"] == 4


def test_flag_validation():
    with pytest.raises(SystemExit):
        main(["classify", spec("shift"), "--precision-bits", "16"])
    with pytest.raises(SystemExit):
        main(["classify", spec("shift"), "--power-cap", "0"])


def test_precision_env_default(monkeypatch, capsys):
    monkeypatch.setenv("BROWDER_PRECISION_BITS", "256")
    assert main(["classify", spec("shift")]) == 0
