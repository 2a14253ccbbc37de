import json

import pytest

from mcgkit.cli import run
from mcgkit.surface import SurfaceContext


def test_boundary(capsys):
    assert run(["boundary", "--genus", "2"]) == 0
    assert capsys.readouterr().out.strip() == "[1,2,-1,-2,3,4,-3,-4]"


def test_unknown_subcommand():
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2


def test_lantern(capsys):
    assert run(["verify", "--relation", "lantern", "--genus", "3"]) == 0
    assert "PASS lantern" in capsys.readouterr().out


def test_irreducible_reports_line(capsys):
    assert run(["irreducible", "--g", "1", "--p", "2"]) == 0
    out = capsys.readouterr().out
    assert "reducible" in out and "[[1,0],[0,1]]" in out


def test_mapping_class_pipeline(tmp_path, capsys):
    prov = SurfaceContext(3).bounding_pair(1).provenance
    assert run(["mapping-class", "--genus", "3", "--word", prov]) == 0
    mc = capsys.readouterr().out.splitlines()[0]
    path = tmp_path / "bp.json"
    path.write_text(mc)
    assert run(["johnson", "--in", str(path)]) == 0
    tau = json.loads(capsys.readouterr().out.splitlines()[0])
    assert tau["terms"] == [{"indices": [1, 2, 3], "coeff": 1}]
    assert run(["johnson", "--in", str(path), "--mod", "3"]) == 0
    capsys.readouterr()
    assert run(["level", "--in", str(path), "--p", "5"]) == 0
    assert "torelli: True" in capsys.readouterr().out
    assert run(["abelianize", "--in", str(path), "--order", "block"]) == 0


def test_non_torelli_johnson_fails(tmp_path, capsys):
    path = tmp_path / "ta.json"
    path.write_text(json.dumps(SurfaceContext(2).twist("a1").to_json()))
    assert run(["johnson", "--in", str(path)]) == 1


def test_psi_and_charney(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"rows": [[1, 3], [0, 1]]}))
    assert run(["psi", "--flavor", "sp", "--p", "3", "--in", str(path)]) == 0
    assert '"rows":[[0,1],[0,0]]' in capsys.readouterr().out
    path.write_text(json.dumps({"rows": [[1, 3, 0], [0, 1, 0], [0, 0, 1]]}))
    assert run(["charney", "--n", "3", "--p", "3", "--in", str(path), "--which", "K"]) == 0
    assert "K: True" in capsys.readouterr().out


def test_reports_are_deterministic(capsys):
    run(["--json", "verify", "--relation", "telescope", "--genus", "2", "--p", "3"])
    first = capsys.readouterr().out
    run(["--json", "verify", "--relation", "telescope", "--genus", "2", "--p", "3"])
    assert capsys.readouterr().out == first
    assert json.loads(first)["ok"]


def test_generate(capsys):
    assert run(["generate-modp", "--g", "1", "--p", "3"]) == 0
    assert "generated 24 of 24" in capsys.readouterr().out


def test_mapping_class_out(tmp_path, capsys):
    path = tmp_path / "ts.json"
    assert run(["mapping-class", "--genus", "3", "--word", "TS1", "--out", str(path)]) == 0
    capsys.readouterr()
    assert run(["level", "--in", str(path), "--p", "3"]) == 0
    assert "torelli: True" in capsys.readouterr().out
