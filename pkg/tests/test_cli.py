import json
import subprocess
import sys

import pytest

from robinkit.cli import REPORT_SCHEMA, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "5040")
    data = json.loads(out)
    assert code == 0 and data["status"] == "Violated" and data["n"] == 5040
    code, out, _ = run(capsys, "check", "5041", "--format", "text")
    assert code == 0 and out.startswith("5041: Satisfied")


def test_check_domain_error(capsys):
    code, _, err = run(capsys, "check", "2")
    assert code == 2 and "error" in err


def test_scan_formats(capsys):
    code, out, _ = run(capsys, "scan", "3", "5040", "--filter", "odd")
    assert code == 0 and json.loads(out)["violations"] == [3, 5, 9]
    code, out, _ = run(capsys, "scan", "3", "100", "--filter", "odd", "--format", "csv")
    assert out.splitlines() == ["n,status,category", "3,Violated,odd", "5,Violated,odd", "9,Violated,odd"]
    code, out, _ = run(capsys, "scan", "5041", "20000", "--format", "text")
    assert code == 0 and out.strip() == "(none)"


def test_transform_and_sa(capsys):
    code, out, _ = run(capsys, "transform", "--op", "H", "126", "--format", "text")
    assert code == 0 and out.strip() == "60"
    code, out, _ = run(capsys, "transform", "--op", "A", "750")
    assert json.loads(out)["value"] == 120
    code, out, _ = run(capsys, "transform", "--op", "B", "12", "--format", "text")
    assert out.strip() == "none"
    code, out, _ = run(capsys, "sa", "--limit", "130", "--format", "text")
    assert out.split() == ["1", "2", "4", "6", "12", "24", "36", "48", "60", "120"]


def test_thresholds(capsys):
    code, out, _ = run(capsys, "thresholds", "--k-range", "5", "--q", "2,3", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("k,M_lo,M_hi") and lines[1].startswith("5,")
    code, out, _ = run(capsys, "thresholds", "--k-range", "28", "--d", "2")
    row = json.loads(out)[0]
    assert row["eps"][1] < -0.003


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nonexistent"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["thresholds", "--k-range", "5:2"])
    assert exc.value.code == 2
    code, _, _ = run(capsys, "check", "10", "--precision-bits", "16")
    assert code == 2


def test_precision_exit_code(capsys, monkeypatch):
    from fractions import Fraction

    from robinkit import robin
    from robinkit.numerics import RealInterval

    # a right-hand side equal to s(n) itself can never be separated
    monkeypatch.setattr(robin, "robin_rhs", lambda x, p: RealInterval.exact(Fraction(403, 105), p))
    code, _, _ = run(capsys, "check", "5040", "--precision-bits", "256")
    assert code == 3


def test_verify_and_report(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "counterexample")
    assert code == 0 and json.loads(out)["passed"]
    code, out, _ = run(capsys, "report", "--suite", "counterexample", "--suite", "massias")
    data = json.loads(out)
    assert code == 0 and data["schema"] == REPORT_SCHEMA and data["passed"]
    assert [s["suite"] for s in data["suites"]] == ["counterexample", "massias"]
    assert data["config"]["precision_bits"] == 4096


def test_failing_suite_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "squarefull", "--sweep-ceiling", "10000", "--format", "text")
    assert code == 1 and "FAIL" in out


def test_env_config(capsys, monkeypatch):
    monkeypatch.setenv("ROBIN_OUTPUT_FORMAT", "text")
    code, out, _ = run(capsys, "check", "5041")
    assert out.startswith("5041: Satisfied")


def test_output_deterministic():
    cmd = [sys.executable, "-m", "robinkit.cli", "report", "--suite", "counterexample", "--suite", "massias"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
