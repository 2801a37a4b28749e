# tests/test_cli.py
import json

import pytest

from orbit_exit_tool.cli import main
from orbit_exit_tool.report import EXIT_INPUT_ERROR, EXIT_REFUTED, EXIT_UNDECIDED, EXIT_VERIFIED


@pytest.fixture(autouse=True)
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("ORBIT_EXIT_COMPLETION_BUDGET", raising=False)
    return tmp_path


def test_group_info(capsys):
    assert main(["group", "--group", "S3"]) == EXIT_VERIFIED
    info = json.loads(capsys.readouterr().out)
    assert info["order"] == 6
    assert info["type"] == "S3"
    assert not info["abelian"]


def test_unknown_group_is_input_error():
    assert main(["group", "--group", "Z9"]) == EXIT_INPUT_ERROR


def test_bad_environment_is_input_error(monkeypatch):
    monkeypatch.setenv("ORBIT_EXIT_COMPLETION_BUDGET", "abc")
    assert main(["group", "--group", "C2"]) == EXIT_INPUT_ERROR


def test_orbit_category_diagram(workdir, capsys):
    dot = workdir / "k4.dot"
    assert main(["orbit-cat", "--group", "K4", "--dot", str(dot)]) == EXIT_VERIFIED
    summary = json.loads(capsys.readouterr().out)
    assert summary["objects"] == 5
    assert summary["morphisms"] == 21
    assert "×2" in dot.read_text(encoding="utf-8")


def test_export_needs_dot_path():
    assert main(["orbit-cat", "export", "--group", "K4"]) == EXIT_INPUT_ERROR


def test_lift_with_end_lift(capsys):
    code = main(["lift", "--model", "circle-reflect", "--word", "N", "NE", "--end-lift", "E"])
    assert code == EXIT_VERIFIED
    assert json.loads(capsys.readouterr().out) == {"E": "N NE"}


def test_presented_exit_category_cannot_be_materialized():
    assert main(["exit-cat", "materialize", "--model", "circle-rotate-3"]) == EXIT_UNDECIDED


def test_validate_reports_witness(workdir, raw_flip_data, capsys):
    path = workdir / "flip.json"
    path.write_text(json.dumps(raw_flip_data), encoding="utf-8")
    assert main(["space", "validate", "--model", str(path)]) == EXIT_REFUTED
    result = json.loads(capsys.readouterr().out)
    assert result["verdict"] == "Refuted"
    assert result["witness"][:2] == ["incidence", "e"]


def test_validate_writes_report(workdir):
    assert main(["space", "validate", "--model", "circle-reflect", "--report", "out"]) == EXIT_VERIFIED
    report = json.loads((workdir / "out" / "report.json").read_text(encoding="utf-8"))
    assert report["status"] == "Verified"
    assert report["provenance"]["model"] == "circle-reflect"
    assert report["provenance"]["subcommand"] == "space"


def test_subdivide_writes_model(workdir):
    out = workdir / "flip-sd.json"
    assert main(["space", "subdivide", "--model", "circle-reflect", "-o", str(out)]) == EXIT_VERIFIED
    assert json.loads(out.read_text(encoding="utf-8"))["vertices"]
