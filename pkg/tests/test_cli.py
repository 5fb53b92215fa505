from __future__ import annotations

import json

import pytest

from permbound.cli import main


@pytest.fixture(autouse=True)
def no_cache(monkeypatch):
    monkeypatch.delenv("PERMBOUND_CACHE_DIR", raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_analyze_s4(tmp_path, capsys):
    f = write(tmp_path, "s4.grp", "degree 4\n(1 2 3 4)\n(1 2)\n")
    code, out, _ = run(capsys, "analyze", f, "--format", "json")
    r = json.loads(out)
    assert code == 0
    assert r["d"]["exact"] and r["d"]["upper"] == 2
    assert r["a"] == 4 and r["bl"]["value"] == 4
    assert all(c["holds"] is not False for c in r["checks"])
    assert r["schema_version"] == 1 and r["seed"] == 0


def test_analyze_intransitive(tmp_path, capsys):
    f = write(tmp_path, "i.grp", "degree 4\n(1 2)\n")
    code, out, _ = run(capsys, "analyze", f, "--format", "json")
    r = json.loads(out)
    assert code == 0 and r["transitive"] is False
    skipped = [c for c in r["checks"] if c["status"] == "skipped"]
    assert skipped and all(c["reason"] for c in skipped)


def test_analyze_trivial(tmp_path, capsys):
    f = write(tmp_path, "t.grp", "degree 1\n")
    code, out, _ = run(capsys, "analyze", f, "--format", "json")
    assert code == 0 and json.loads(out)["d"]["upper"] == 0


def test_analyze_bad_file(tmp_path, capsys):
    f = write(tmp_path, "bad.grp", "degree 3\n(1 5)\n")
    code, _, err = run(capsys, "analyze", f)
    assert code == 1 and "out of range" in err
    code, _, _ = run(capsys, "analyze", str(tmp_path / "missing.grp"))
    assert code == 1


def test_analyze_deterministic(tmp_path, capsys):
    f = write(tmp_path, "w.grp", "degree 6\n(1 2)\n(1 3 5)(2 4 6)\n")
    outs = [run(capsys, "analyze", f, "--format", "json", "--seed", "5")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--degree", "2-5", "--jobs", "2")
    assert code == 0
    assert "degree 5: 5 groups" in out and "0 violations" in out


def test_verify_above_cap(capsys):
    code, _, err = run(capsys, "verify", "--degree", "9")
    assert code == 1 and "above exhaustive cap" in err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--degree", "4", "--format", "json")
    payload = json.loads(out)
    assert code == 0 and payload["count"] == 5
    code, out, _ = run(capsys, "enumerate", "--degree", "6", "--mode", "curated")
    assert code == 0 and out.startswith("degree 6 (curated)")


def test_construct(tmp_path, capsys):
    code, out, _ = run(capsys, "construct", "soluble-alt", "--n", "12")
    assert code == 0 and "strategy paper" in out and "degree 12" in out
    code, out, _ = run(capsys, "construct", "two-orbit", "--n", "6", "--p", "5", "--alt", "--format", "json")
    cert = json.loads(out)
    assert code == 0 and cert["strategy"] == "fallback" and cert["verified"]
    target = tmp_path / "w.grp"
    code, out, _ = run(capsys, "construct", "soluble-alt", "--n", "10", "--out", str(target))
    assert code == 0 and target.read_text().splitlines()[1] == "degree 10"


def test_construct_failures(capsys):
    code, out, _ = run(capsys, "construct", "two-orbit", "--n", "3", "--p", "3", "--alt")
    assert code == 2 and "infeasible" in out
    code, _, err = run(capsys, "construct", "soluble-alt", "--n", "2")
    assert code == 1 and "Alt(2)" in err
    code, _, _ = run(capsys, "construct", "two-orbit", "--n", "5")
    assert code == 1


def test_ftable(tmp_path, capsys):
    out_file = tmp_path / "f.csv"
    code, _, _ = run(capsys, "ftable", "--max", "6", "--out", str(out_file))
    lines = out_file.read_text().splitlines()
    assert code == 0 and lines[0] == "n,f,f_over_n2,witness" and len(lines) == 6


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "verify")[0] == 1
    assert run(capsys, "ftable", "--max", "9")[0] == 1
