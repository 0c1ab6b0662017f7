from __future__ import annotations

import json

import pytest

from qvol.cli import fmt_float, main, to_json
from qvol.closedforms import morton_torus_jones
from qvol.evaluation import GrowthSeries
from qvol.qpoly import LaurentPoly


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_jones_json(capsys):
    code, out, _ = run(capsys, "jones", "--braid", "2: 1 1 1", "--n", "2")
    assert code == 0
    obj = json.loads(out)
    assert LaurentPoly.from_json_obj(obj["J"]) == morton_torus_jones(2, 3, 2)
    prov = obj["provenance"]
    assert prov["command"].startswith("qvol jones") and prov["version"] and "mirror=True" in prov["conventions"]


def test_growth_csv(capsys):
    code, out, _ = run(capsys, "growth", "--braid", "3: 1 -2 1 -2", "--alpha", "0.3", "--nmin", "2", "--nmax", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# command:")
    assert [ln for ln in lines if not ln.startswith("#")][0] == "n,value"
    assert GrowthSeries.from_csv(out, "0.3").ns == [2, 3, 4, 5]


def test_cyclo(capsys):
    code, out, _ = run(capsys, "cyclo", "--braid", "3: 1 -2 1 -2", "--N", "3", "--label", "4_1")
    obj = json.loads(out)
    assert code == 0 and obj["integrality"] == "certified"
    assert all(LaurentPoly.from_json_obj(c) == 1 for c in obj["C"])


def test_borromean_and_torus(capsys):
    code, out, _ = run(capsys, "borromean", "--nmax", "64")
    assert code == 0 and "n,value" in out and "\n64," in out
    code, out, _ = run(capsys, "torus", "--a", "2", "--b", "3", "--alpha", "0.5", "--nmax", "20", "--out", "json")
    assert code == 0 and len(json.loads(out)["series"]) == 20


def test_lob(capsys):
    code, out, _ = run(capsys, "lob", "--max", "--out", "json")
    obj = json.loads(out)
    assert code == 0 and obj["alpha"] == 0.75 and obj["kappa"] == 0.5
    code, out, _ = run(capsys, "lob", "--scan", "12", "--out", "csv")
    assert code == 0 and "a,b,k,log_growth" in out


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "jones", "--braid", "2: 1 1", "--n", "2")[0] == 2
    assert run(capsys, "jones", "--braid", "nonsense", "--n", "2")[0] == 2
    assert run(capsys, "torus", "--a", "2", "--b", "3", "--alpha", "1", "--nmax", "4")[0] == 2
    assert run(capsys, "growth", "--braid", "2: 1 1 1", "--nmin", "5", "--nmax", "2")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "jones", "--braid", "2: 1 1 1", "--n", "2", "-o", str(tmp_path / "no" / "x.json"))[0] == 2


def test_resource_limit(capsys, monkeypatch):
    monkeypatch.setenv("QVOL_MAX_TERMS", "10")
    code, _, err = run(capsys, "jones", "--braid", "3: 1 -2 1 -2", "--n", "5")
    assert code == 2 and "exceeds" in err


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "")
    assert code == 0 and json.loads(out)["checks"] == []
    code, out, _ = run(capsys, "verify", "--suite", "product_recurrence,mahler_boyd")
    assert code == 0 and all(c["pass"] for c in json.loads(out)["checks"])
    # the Borromean check contains a sub-claim that does not hold numerically
    code, out, _ = run(capsys, "verify", "--suite", "borromean_growth")
    assert code == 1 and json.loads(out)["checks"][0]["pass"] is False
    assert run(capsys, "verify", "--suite", "nope")[0] == 2


def test_output_file_is_deterministic(tmp_path, capsys):
    # same command line, so the provenance header is identical too
    p = tmp_path / "a.csv"
    runs = []
    for _ in range(2):
        assert main(["borromean", "--nmax", "256", "-o", str(p)]) == 0
        runs.append(p.read_bytes())
    assert runs[0] == runs[1]


def test_float_formatting():
    assert fmt_float(0.1) == "0.10000000000000001"
    assert float(fmt_float(1 / 3)) == 1 / 3
    text = to_json({"b": [1, 0.5], "a": {"x": None, "y": True}})
    assert json.loads(text) == {"b": [1, 0.5], "a": {"x": None, "y": True}}
    assert text.index('"b"') < text.index('"a"')
