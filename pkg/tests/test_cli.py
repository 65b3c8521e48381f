import json
import subprocess
import sys
from pathlib import Path

import pytest

from gfomc.cli import run

DEMOS = Path(__file__).resolve().parent.parent / "demos"


def call(*argv):
    lines = []
    code = run([str(a) for a in argv], out=lines.append)
    return code, lines


def fields(lines):
    return dict(line.split(": ", 1) for line in lines)


def test_classify_qstar():
    code, lines = call("classify", DEMOS / "qstar.q")
    f = fields(lines)
    assert code == 0
    assert (f["type"], f["unsafe"], f["length"], f["final"]) == ("I-I", "true", "1", "true")


def test_classify_forbidden():
    f = fields(call("classify", DEMOS / "forbidden.q")[1])
    assert (f["type"], f["forbidden"], f["ubiquitous_left"], f["ubiquitous_right"]) == ("II-II", "true", "U", "V")


def test_classify_minimizes(tmp_path):
    q = tmp_path / "r.q"
    q.write_text((DEMOS / "qstar.q").read_text().strip() + " & forall x forall y (R(x) | S(x,y) | T(y))\n")
    code, lines = call("minimize", q)
    assert code == 0 and fields(lines)["clauses"] == "2"


def test_prob_and_count():
    assert call("prob", DEMOS / "qstar.q", DEMOS / "one_by_one.tid") == (0, ["probability: 5/8"])
    code, lines = call("count", DEMOS / "qstar.q", DEMOS / "one_by_one.tid")
    assert code == 0 and lines == ["uncertain_tuples: 3", "worlds: 8", "count: 5"]


def test_zg():
    f = fields(call("zg", DEMOS / "qstar.q")[1])
    assert f["type"] == "I-I" and int(f["length"]) >= 2


def test_reduce_t1():
    code, lines = call("reduce-t1", DEMOS / "chain2.q", DEMOS / "path.p2cnf", "--mode", "paper", "--table", "--check")
    f = fields(lines)
    assert code == 0 and f["count"] == f["brute_count"] == "5"
    rows = [line for line in lines if line.startswith("signature")]
    assert sum(int(r.rsplit(": ", 1)[1]) for r in rows) == 8


def test_reduce_t1_c():
    code, lines = call("reduce-t1", DEMOS / "qstar.q", DEMOS / "one_edge.p2cnf", "--c", "1/3")
    assert code == 0 and fields(lines)["c"] == "1/3" and fields(lines)["count"] == "3"


def test_ccp():
    code, lines = call("ccp", DEMOS / "small.pp2cnf", "--check")
    assert code == 0 and fields(lines)["count"] == fields(lines)["brute_count"] == "8"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["classify"],
        ["classify", "/nonexistent.q"],
        ["reduce-t1", DEMOS / "qstar.q", DEMOS / "path.p2cnf", "--c", "2"],
        ["reduce-t1", DEMOS / "qstar.q", DEMOS / "path.p2cnf", "--mode", "other"],
        ["verify", "nosuchsuite"],
        ["prob", DEMOS / "qstar.q", DEMOS / "qstar.q"],
        ["classify", DEMOS / "one_by_one.tid"],
        ["ccp", DEMOS / "path.p2cnf"],
    ],
)
def test_usage_and_input_errors(argv, capsys):
    assert call(*argv)[0] == 2
    assert "gfomc:" in capsys.readouterr().err


def test_computation_error(tmp_path, capsys):
    q = tmp_path / "safe.q"
    q.write_text("forall x forall y (R(x) | S1(x,y)) & forall x forall y (S2(x,y) | T(y))\n")
    with pytest.warns(UserWarning):
        assert call("reduce-t1", q, DEMOS / "one_edge.p2cnf")[0] == 1
    assert "failed" in capsys.readouterr().err


def test_cap_exit(monkeypatch, capsys):
    monkeypatch.setenv("GFOMC_MAX_VARS", "1")
    assert call("reduce-t1", DEMOS / "qstar.q", DEMOS / "path.p2cnf", "--check")[0] == 1


def test_verify_deterministic():
    a = call("verify", "mobius", "--seed", "5", "--trials", "4")
    b = call("verify", "mobius", "--seed", "5", "--trials", "4")
    assert a == b and a[0] == 0
    assert a[1][-1] == "status: pass"
    assert all('anchor="' in line for line in a[1] if line.startswith("mobius."))


def test_verify_replay(tmp_path):
    path = tmp_path / "r.json"
    path.write_text(json.dumps({"check": "ccp.total", "seed": 3, "trial": 7}))
    code, lines = call("verify", "--replay", path)
    assert code == 0 and lines[0] == "replay: ccp.total" and lines[-1] == "status: pass"


def test_verify_replay_bad(tmp_path):
    path = tmp_path / "r.json"
    path.write_text(json.dumps({"check": "nope", "seed": 0, "trial": 0}))
    assert call("verify", "--replay", path)[0] == 2


def test_verify_failure_saves_counterexample(tmp_path, monkeypatch):
    from gfomc import suites

    broken = suites.Check("ccp.total", "always fails", 2, lambda rng: (False, "instance"))
    monkeypatch.setitem(suites.SUITES, "ccp", [broken])
    code, lines = call("verify", "ccp", "--save-dir", tmp_path)
    assert code == 1 and lines[-1] == "status: fail"
    saved = json.loads((tmp_path / "counterexample-ccp.total.json").read_text())
    assert saved == {"check": "ccp.total", "seed": 0, "trial": 0, "instance": "instance"}


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gfomc", "prob", DEMOS / "qstar.q", DEMOS / "one_by_one.tid"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "probability: 5/8\n"
