from __future__ import annotations

import json
import subprocess
import sys

import pytest

from framelets.cli import run
from framelets.io import data_path

QUINCUNX = "1 1; 1 -1"


def fixture(name: str) -> str:
    return str(data_path(f"{name}.json"))


def test_analyze(capsys):
    assert run(["analyze", "--filter", fixture("quincunx_a"), "--dilation", QUINCUNX, "--group", "D4", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["sum_rules"] == "4" and out["interpolatory"] is True
    assert out["symmetry"] == {"group": "D4", "center": ["0", "0"], "sign": 1}


def test_dual_verify_and_tamper(tmp_path, capsys):
    bank = tmp_path / "bank.json"
    args = ["dual", "--a", fixture("quincunx_a"), "--ta", fixture("quincunx_ta"), "--dilation", QUINCUNX, "--n1", "2", "--n2", "2"]
    assert run(args + ["--out", str(bank)]) == 0
    assert run(["verify", "--bank", str(bank)]) == 0
    obj = json.loads(bank.read_text())
    obj["tbs"][2]["coeffs"][0][0] = "1/3"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    assert run(["verify", "--bank", str(bad), "--json"]) == 1
    capsys.readouterr()
    merged = tmp_path / "merged.json"
    assert run(args + ["--out", str(merged), "--merge-proportional"]) == 0
    assert len(json.loads(merged.read_text())["bs"]) == 4


def test_qt_and_sm2(tmp_path, capsys):
    bank = tmp_path / "qt.json"
    assert run(["qt", "--a", fixture("sqrt3_a"), "--dilation", "1 -2; 2 -1", "--m", "2", "--out", str(bank)]) == 0
    assert run(["verify", "--bank", str(bank)]) == 0
    capsys.readouterr()
    assert run(["sm2", "--filter", fixture("sqrt3_a"), "--dilation", "1 -2; 2 -1", "--method", "eig", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["eig"]["sm2"] == pytest.approx(2.52996, abs=1e-3)


def test_design_and_render(tmp_path, capsys):
    inst = tmp_path / "ta.json"
    fam = tmp_path / "fam.json"
    args = ["design", "--support", "-3:3,-3:3", "--dilation", "2 0; 0 2", "--sr", "4", "--interpolatory", "--sym", "D6@0,0"]
    assert run(args + ["--coords", "0,3", "--at", "-1/64", "--filter-out", str(inst), "--out", str(fam)]) == 0
    assert "family dimension 1" in capsys.readouterr().out
    assert run(["analyze", "--filter", str(inst), "--dilation", "2 0; 0 2", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["sum_rules"] == "4"
    bank = tmp_path / "bank.json"
    assert run(["dual", "--a", fixture("dyadic_a"), "--ta", str(inst), "--dilation", "2 0; 0 2", "--n1", "2", "--n2", "2", "--out", str(bank)]) == 0
    out = tmp_path / "grids"
    assert run(["render", "--bank", str(bank), "--levels", "2", "--out", str(out), "--format", "csv"]) == 0
    assert (out / "phi.csv").exists() and (out / "tpsi1.csv").exists()
    assert (out / "phi.csv").read_text().splitlines()[0] == "x1,x2,value"


def test_usage_errors(tmp_path, capsys):
    assert run(["nope"]) == 2
    assert run(["analyze", "--filter", str(tmp_path / "missing.json"), "--dilation", QUINCUNX]) == 2
    assert run(["design", "--support", "-3:3,-3:3", "--dilation", "2 0; 0 2", "--sr", "2", "--interpolatory", "--sym", "pmI@1/2,0"]) == 2
    assert run(["qt", "--a", fixture("quincunx_b1"), "--dilation", QUINCUNX, "--m", "2", "--out", str(tmp_path / "x.json")]) == 2
    capsys.readouterr()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "framelets", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "analyze" in res.stdout
