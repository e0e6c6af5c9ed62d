import io
import json
import subprocess
import sys

import pytest

from qlucas.cli import emit_report, main
from qlucas.identities import REGISTRY
from qlucas.report import IdentityReport

from test_identities import _perturbed


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_eval_golden():
    code, out, _ = run("eval", "--family", "lucas", "--n", "4")
    assert code == 0
    assert out.strip() == "x^4 + (q^3+q^2+q+1)*s*x^2 + (q^3+q)*s^2"


@pytest.mark.parametrize(
    "family,n,expected",
    [
        ("fib", "5", "x^4 + (q^3+q^2+q)*s*x^2 + q^3*s^2"),
        ("lucas-star", "0", "1"),
        ("lucas", "0", "2"),
        ("catalan", "2", "q^2+1"),
        ("hermite", "2", "x^2 - s"),
        ("rogers-szego", "1", "x + s"),
    ],
)
def test_eval_families(family, n, expected):
    code, out, _ = run("eval", "--family", family, "--n", n)
    assert (code, out.strip()) == (0, expected)


def test_eval_star_flag():
    assert run("eval", "--family", "lucas", "--n", "0", "--star")[1].strip() == "1"
    assert run("eval", "--family", "fib", "--n", "3", "--star")[0] == 2


def test_eval_bad_input():
    assert run("eval", "--family", "catalan", "--n", "-1")[0] == 2
    assert run("eval", "--family", "nope", "--n", "1")[0] == 2
    assert run("eval", "--family", "fib")[0] == 2


def test_verify_eq3_1():
    code, out, _ = run("verify", "--id", "eq3.1", "--max-n", "10")
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    assert code == 0
    assert len(lines) == 11 and all(l.startswith("PASS") for l in lines)


def test_unknown_id_runs_nothing():
    code, out, err = run("verify", "--id", "eq3.1", "no.such.id")
    assert code == 2
    assert out == ""
    assert "no.such.id" in err


@pytest.mark.parametrize("argv", [["verify", "--all", "--order", "0"], ["verify", "--all", "--max-n", "-1"], ["verify"], ["frobnicate"], []])
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_json_schema():
    code, out, _ = run("verify", "--id", "eq3.1", "--max-n", "2", "--format", "json")
    assert code == 0
    rows = [json.loads(l) for l in out.splitlines()]
    assert len(rows) == 3
    for row in rows:
        assert set(row) == {"id", "params", "status", "counterexample", "elapsed_ms"}
    assert rows[2]["params"] == {"n": 2} and rows[2]["counterexample"] is None


def test_emit_report_formats():
    ok = IdentityReport("eq3.1", {"n": 2}, "pass", None, 0.001)
    assert emit_report(ok, "json").startswith('{"id":"eq3.1","params":{"n":2},"status":"pass","counterexample":null,"elapsed_ms":')
    bad = IdentityReport("eq3.1", {"n": 2}, "fail", "q^3 - q", 0.001)
    line = emit_report(bad, "text")
    assert "FAIL" in line and "q^3 - q" in line


def _strip_elapsed(text):
    return [json.loads(l) | {"elapsed_ms": None} for l in text.splitlines()]


def test_parallel_matches_serial_and_is_repeatable():
    argv = ["verify", "--id", "eq4.5", "cor5.2", "eq2.12", "eq5.6", "--max-n", "6", "--order", "30", "--format", "json"]
    a = _strip_elapsed(run(*argv)[1])
    b = _strip_elapsed(run(*argv)[1])
    c = _strip_elapsed(run(*argv, "--parallel")[1])
    assert a == b == c


def test_m_values_passed_through():
    code, out, _ = run("verify", "--id", "eq4.7", "--max-n", "2", "--m", "-2", "3", "--format", "json")
    rows = [json.loads(l) for l in out.splitlines()]
    assert code == 0 and {r["params"]["m"] for r in rows} == {-2, 3}


def test_list_covers_registry():
    code, out, _ = run("list")
    assert code == 0
    ids = [l.split()[0] for l in out.splitlines()]
    assert ids == list(REGISTRY)
    line = next(l for l in out.splitlines() if l.startswith("eq4.8 "))
    assert "x=1" in line


def test_exit_1_on_perturbed_identity(monkeypatch):
    monkeypatch.setitem(REGISTRY, "eq3.1.perturbed", _perturbed("eq3.1", "eq3.1.perturbed"))
    for fmt in ("text", "json"):
        code, out, _ = run("verify", "--id", "eq3.1", "eq3.1.perturbed", "--max-n", "3", "--format", fmt)
        assert code == 1
        assert "FAIL" in out or '"status":"fail"' in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qlucas", "verify", "--id", "no.such.id"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_text_run_records_table_correction():
    code, out, _ = run("verify", "--id", "eq5.18", "--max-n", "12")
    assert code == 0
    assert "note eq5.18:" in out and "6n^2+7n+2" in out
