import json
import subprocess
import sys

import pytest

from adlv.cli import main

GL2_B = ["--datum", "GL2", "--mu", "1,0", "--lambda", "1,0", "--w", "1"]
GU5_B = ["--datum", "GU5", "--mu", "1,1,1,0,0,1", "--lambda", "1,1,0,1,0,1", "--w", "4"]


def run(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def test_classify_running_example(capsys):
    code, doc = run(capsys, "classify", *GL2_B)
    assert code == 0 and doc["hn_class"] == "irreducible"
    assert doc["provenance"]


def test_pi0_running_example(capsys):
    code, doc = run(capsys, "pi0", *GL2_B)
    assert code == 0 and doc["variant"] == "coset"


def test_pi0_kappa_mismatch_exit_code(capsys):
    code, doc = run(capsys, "pi0", "--datum", "GL2", "--mu", "1,0", "--lambda", "1,1")
    assert code == 3 and doc["variant"] == "empty"


def test_oracle_agrees_with_predicate(capsys):
    code, doc = run(capsys, "oracle", "--n", "2", "--q", "2", "--depth", "1", "--mu", "1,0",
                    "--lambda", "1,0", "--w", "1", "--points")
    assert code == 0 and doc["agrees"] and doc["points"]


def test_iset_and_chain_for_unitary_example(capsys):
    code, doc = run(capsys, "iset", *GU5_B, "--levi", "1,4")
    assert code == 0 and len(doc["elements"]) == 1 and doc["connected"]
    code, doc = run(capsys, "chain", "--datum", "ResGL(2,2)", "--mu", "1,0,1,0", "--lambda", "1,0,0,1",
                    "--levi", "")
    assert code == 0 and doc["chains"][0]["valid"] and doc["chains"][0]["refined_valid"]


def test_survey_table_and_checks(capsys):
    code, doc = run(capsys, "survey", "--datum", "GL2", "--bound", "1")
    assert code == 0 and len(doc["rows"]) == 9 * 2 * 5
    assert {r["variant"] for r in doc["rows"]} <= {"empty", "coset", "discrete", "product"}
    code, doc = run(capsys, "survey", "--datum", "GL2", "--bound", "-1")
    assert code == 0 and doc["rows"] == []


def test_single_point_unitary_survey(capsys):
    code, doc = run(capsys, "survey", *GU5_B)
    (row,) = doc["rows"]
    assert row["hn_class"] == "irreducible" and row["variant"] == "coset"


def test_table_format(capsys):
    assert main(["survey", "--datum", "GL2", "--bound", "0", "--format", "table"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("mu\tlambda")


def test_spec_file_and_out_file(tmp_path, capsys):
    spec = tmp_path / "job.json"
    spec.write_text(json.dumps({"command": "classify", "datum": "GL2", "mu": [1, 0],
                                "b": {"lambda": [1, 0], "w": [1]}}))
    out = tmp_path / "report.json"
    assert main(["classify", "--spec", str(spec), "--out", str(out)]) == 0
    first = out.read_text()
    assert main(["classify", "--spec", str(spec), "--out", str(out)]) == 0
    assert out.read_text() == first
    assert json.loads(first)["hn_class"] == "irreducible"


@pytest.mark.parametrize("argv, code", [
    (["classify", "--datum", "NOPE", "--mu", "1,0", "--lambda", "1,0"], 2),
    (["classify", "--datum", "GL2", "--mu", "1,x", "--lambda", "1,0"], 2),
    (["classify", "--datum", "GL2", "--mu", "1,0"], 2),
    (["classify", "--datum", "GL2", "--mu", "1,0", "--lambda", "1,0", "--w", "5"], 2),
    (["classify", "--datum", "GL2", "--mu", "2,0", "--lambda", "1,0", "--w", "1"], 3),
    (["pi0", "--datum", "GL2", "--mu", "2,0", "--lambda", "2,0"], 4),
    (["iset", "--datum", "GL3", "--mu", "1,0,0", "--lambda", "1,0,0", "--w", "1", "--levi", "2"], 4),
])
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code
    assert "error" in json.loads(capsys.readouterr().out) or code == 3


def test_resource_cap_exit_code(monkeypatch, capsys):
    import adlv.cli as cli
    monkeypatch.setattr(cli, "SURVEY_ROW_CAP", 5)
    assert main(["survey", "--datum", "GL2", "--bound", "1"]) == 5


def test_console_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "adlv.cli", "pi0", *GL2_B]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and json.loads(a)["variant"] == "coset"


def test_parallel_survey_matches_sequential(monkeypatch):
    import adlv.cli as cli
    from adlv.presets import gl

    monkeypatch.setattr(cli, "SURVEY_WORKERS", 1)
    sequential = cli.survey_rows(gl(2), 1)
    monkeypatch.setattr(cli, "SURVEY_WORKERS", 3)
    assert cli.survey_rows(gl(2), 1) == sequential
