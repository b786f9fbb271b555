from __future__ import annotations

import json

import pytest

from tauex.cli import fixture_names, run_cli


def _run(capsys, *argv):
    code = run_cli(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fixture_corpus_shipped():
    names = fixture_names()
    for base in ("a2", "a3", "loop2", "nak3", "kron"):
        assert base in names and f"{base}_q" in names


def test_validate(capsys):
    code, out, _ = _run(capsys, "validate", "--input", "a2")
    assert code == 0 and json.loads(out)["dim"] == 3


def test_indecs_and_rigids(capsys):
    code, out, _ = _run(capsys, "indecs", "--input", "loop2")
    assert code == 0 and len(json.loads(out)["modules"]) == 2
    code, out, _ = _run(capsys, "tau-rigids", "--input", "a2")
    mods = json.loads(out)["modules"]
    assert code == 0 and sorted(m["g_vector"] for m in mods) == [[0, 1], [1, -1], [1, 0]]


def test_sequences(capsys):
    code, out, _ = _run(capsys, "sequences", "--flavor", "plain", "--input", "a2")
    assert code == 0 and len(json.loads(out)["sequences"]) == 3
    code, out, _ = _run(capsys, "sequences", "--flavor", "signed", "--input", "a2")
    assert len(json.loads(out)["sequences"]) == 10


def test_verify_interp(capsys):
    code, out, _ = _run(capsys, "verify", "--statement", "interp", "--input", "a2")
    assert code == 0
    assert json.loads(out)["statements"] == [{"name": "interp", "status": "pass", "counterexample": None}]


def test_report_shape_and_determinism(tmp_path, capsys):
    p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert run_cli(["report", "--input", "a2", "--out", str(p1)]) == 0
    assert run_cli(["report", "--input", "a2", "--out", str(p2)]) == 0
    assert p1.read_bytes() == p2.read_bytes()
    rep = json.loads(p1.read_text())
    assert list(rep)[:5] == ["algebra", "field", "universe", "statements", "sequences"]
    assert len(rep["statements"]) == 7 and all(s["status"] == "pass" for s in rep["statements"])
    entry = rep["sequences"][0]["entries"][0]
    assert set(entry) == {"dim_vector", "matrices", "shifted"}


def test_report_on_bounded_slice(capsys):
    code, out, _ = _run(capsys, "report", "--input", "kron")
    rep = json.loads(out)
    assert code == 0
    assert rep["universe"] == {"certified": False, "bound": [3, 3], "count": 18}
    skipped = {s["name"] for s in rep["statements"] if s["status"] == "skipped"}
    assert skipped == {"main", "cor-main", "cor-wide"}


def test_loop_sequences_listed(capsys):
    code, out, _ = _run(capsys, "sequences", "--flavor", "brick", "--input", "loop2")
    assert code == 0 and len(json.loads(out)["sequences"]) == 1


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code, _, err = _run(capsys, "validate", "--input", str(bad))
    assert code == 4 and "invalid JSON" in err
    code, _, _ = _run(capsys, "validate", "--input", "does-not-exist")
    assert code == 4
    code, _, err = _run(capsys, "indecs", "--input", "kron", "--dim-bound", "9,9")
    assert code == 3 and "[" in err
    code, _, _ = _run(capsys, "verify", "--statement", "bogus", "--input", "a2")
    assert code == 4


def test_negate_theta_recorded(capsys):
    code, out, _ = _run(capsys, "verify", "--statement", "equiv", "--negate-theta", "--input", "a3")
    rep = json.loads(out)
    assert code == 0 and rep["statements"][0]["status"] == "pass"
    assert "-theta" in rep["semistability_convention"]


def test_failure_exit_code(tmp_path, capsys, monkeypatch):
    from tauex import verify

    def broken(universe):
        return verify.StatementResult("interp", "fail", {"X": None})

    monkeypatch.setattr(verify, "suite_interp", broken)
    code, out, _ = _run(capsys, "verify", "--statement", "interp", "--input", "a2")
    assert code == 2 and json.loads(out)["statements"][0]["status"] == "fail"


def test_jobs_flag_gives_same_universe(capsys):
    _, one, _ = _run(capsys, "indecs", "--input", "kron", "--dim-bound", "2,2")
    _, many, _ = _run(capsys, "indecs", "--input", "kron", "--dim-bound", "2,2", "--jobs", "2")
    assert one == many
