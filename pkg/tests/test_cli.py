from __future__ import annotations

import io
import json

import pytest

from costreg import fixtures as F
from costreg.cli.main import run_command


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in [("m1", F.M1_TEXT), ("m2", F.M2_TEXT), ("m3", F.M3_TEXT), ("m4", F.M4_TEXT)]:
        p = tmp_path / f"{name}.cra"
        p.write_text(text)
        out[name] = str(p)
    for name, make in [("a", lambda: F.counter("a")), ("len", lambda: F.counter("ab"))]:
        from costreg.cli.fmt import print_machine

        p = tmp_path / f"{name}.cra"
        p.write_text(print_machine(make()))
        out[name] = str(p)
    return out


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), stdout=out, stderr=err)
    return code, out.getvalue().strip(), err.getvalue().strip()


def run_json(*argv):
    code, out, _ = run(*argv, "--json")
    return code, json.loads(out)


def test_eval(files):
    assert run("eval", files["m1"], "abeab")[:2] == (0, "4")


def test_eval_json(files):
    code, rep = run_json("eval", files["m1"], "abeab")
    assert code == 0
    assert rep == {"command": "eval", "outcome": "value", "diagnostics": [], "value": "4"}


def test_eval_trace(files):
    code, out, _ = run("eval", files["m1"], "ab", "--trace")
    assert code == 0 and "q0 | x=1 y=2" in out


def test_mincost_auto_and_models(files):
    assert run("mincost", files["m1"])[:2] == (0, "0 witness=ε")
    assert run("mincost", files["m4"], "--model", "past-discount")[:2] == (0, "0 witness=ε")
    code, rep = run_json("mincost", files["m2"])
    assert code == 0 and rep["outcome"] == "finite" and rep["value"] == "0"


def test_mincost_brute(files):
    assert run("mincost", files["m1"], "--model", "brute", "--maxlen", "3")[0] == 0


def test_equiv_exit_codes(files):
    assert run("equiv", files["m1"], files["m1"])[:2] == (0, "equivalent")
    code, rep = run_json("equiv", files["a"], files["len"])
    assert code == 1 and rep["witness"] == "b"
    # copyless min-plus only gets a bounded check
    assert run("equiv", files["m2"], files["m2"])[0] == 2


def test_contains(files):
    assert run("contains", files["a"], files["len"])[:2] == (0, "holds")
    code, out, _ = run("contains", files["len"], files["a"])
    assert code == 1 and out.startswith("violation b")


def test_range(files):
    assert run("range", files["len"], "3")[:2] == (0, "yes witness=aaa")
    assert run("range", files["len"], "-1")[:2] == (1, "no")


def test_convert_and_check(files, tmp_path):
    code, out, _ = run("convert", files["m1"], "--to", "wa")
    assert code == 0 and out.startswith("wa")
    p = tmp_path / "m1.wa"
    p.write_text(out + "\n")
    assert run("eval", str(p), "abeab")[:2] == (0, "4")
    code, out, _ = run("convert", files["a"], "--to", "diff", "--with", files["len"])
    assert code == 0
    code, out, _ = run("check", files["m1"])
    assert code == 0 and "copyless no" in out


def test_oracle(files):
    assert run("oracle", files["m1"], "--maxlen", "3")[:2] == (0, "0 witness=ε")


def test_gen_fixture_and_sat3():
    code, out, _ = run("gen", "m1")
    assert code == 0 and out.startswith("cra")
    code, rep = run_json("gen", "sat3", "--vars", "1", "--clause-list", "1 1 1, -1 -1 -1")
    assert code == 0 and rep["diagnostics"] == ["satisfiable no"]


def test_oracle_maxlen_from_environment(files, monkeypatch):
    monkeypatch.setenv("CRA_ORACLE_MAXLEN", "2")
    code, rep = run_json("equiv", files["m2"], files["m2"])
    assert code == 2


@pytest.mark.parametrize("argv", [["bogus"], [], ["eval", "/nonexistent.cra"], ["gen", "nosuchfixture"]])
def test_usage_errors_exit_3(argv):
    code, _, err = run(*argv)
    assert code == 3 and err


def test_parse_error_is_reported(tmp_path):
    p = tmp_path / "empty.cra"
    p.write_text("")
    code, rep = run_json("eval", str(p), "a")
    assert code == 3 and rep["outcome"] == "error"
    assert any("expected header" in d for d in rep["diagnostics"])
