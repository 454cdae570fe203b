import io
import json
import subprocess
import sys

import pytest

from qpfaff.cli import parse_config, run
from qpfaff.report import Report


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_compute_rdet():
    code, out = call("compute", "--what", "rdet", "--n", "2", "--regime", "generic")
    assert code == 0
    assert out == "a11*a22 - r*a12*a21\n"


def test_compute_json():
    code, out = call("compute", "--what", "cdet", "--n", "2", "--format", "json")
    assert code == 0
    assert json.loads(out) == {
        "terms": [
            {"word": [[0, 1, 1], [0, 2, 2]], "coeff": "1"},
            {"word": [[0, 1, 2], [0, 2, 1]], "coeff": "-r"},
        ]
    }


@pytest.mark.parametrize("what", ["per", "hf", "pf", "pfprime", "B", "Bprime", "adj", "antisym"])
def test_compute_each_invariant(what):
    n = "2" if what != "antisym" else "4"
    code, out = call("compute", "--what", what, "--n", n, "--regime", "q-negative")
    assert code == 0 and out


def test_compute_hf_per_agree():
    _, hf = call("compute", "--what", "hf", "--n", "2", "--regime", "q-negative")
    _, per = call("compute", "--what", "per", "--n", "2", "--regime", "q-negative")
    assert hf == per == "a11*a22 - q*a12*a21\n"


def test_compute_antisym_text():
    code, out = call("compute", "--what", "antisym", "--n", "4")
    assert code == 0
    assert "B[2,1] = -1/s * B[1,2]" in out
    assert "Bprime[4,3] = -r * Bprime[3,4]" in out


def test_verify_json():
    code, out = call("verify", "--identity", "pf_rdet", "--size", "4", "--regime", "generic", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data == {
        "identity": "pf_rdet",
        "size": 4,
        "regime": "generic",
        "holds": True,
        "residual_terms": 0,
        "elapsed_ms": 0,
    }
    assert Report.from_dict(data).holds


def test_verify_failure_exit_code():
    code, out = call("verify", "--identity", "maya", "--size", "4", "--regime", "generic")
    assert code == 1
    assert "FAILS" in out


def test_verify_numeric_regime():
    code, _ = call("verify", "--identity", "maya", "--size", "4", "--regime", "numeric", "--r", "2", "--s", "1/2")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["frobnicate"],
        ["verify", "--identity", "nope", "--size", "2"],
        ["verify", "--identity", "det_rc_eq", "--size", "2", "--regime", "complex"],
        ["verify", "--identity", "hf_per", "--size", "4"],
        ["verify", "--identity", "det_rc_eq", "--size", "9"],
        ["verify", "--identity", "det_rc_eq", "--size", "2", "--r", "2"],
        ["compute", "--what", "pf", "--n", "3"],
        ["compute", "--what", "per", "--n", "2"],
        ["verify", "--identity", "det_rc_eq", "--size", "2", "--regime", "numeric", "--r", "x"],
    ],
)
def test_usage_errors(argv, capsys):
    code, _ = call(*argv)
    assert code == 2
    assert capsys.readouterr().err


def test_allow_large_flag():
    code, _ = call("verify", "--identity", "det_rc_eq", "--size", "5", "--allow-large")
    assert code == 0


def test_parse_config():
    cfg = parse_config(["suite", "--skip", "2n6", "--budget", "5", "--seed", "3"])
    assert cfg.command == "suite" and cfg.skip == ("2n6",) and cfg.budget == 5.0 and cfg.seed == 3


def test_suite_budget_exhausted():
    code, out = call("suite", "--budget", "-1", "--skip", "2n6")
    assert code == 1
    assert out.splitlines()[-1].startswith("0 passed, 0 failed")


def test_suite_json_is_stable():
    first = call("suite", "--skip", "2n6", "--format", "json")
    second = call("suite", "--skip", "2n6", "--format", "json")
    assert first == second
    code, out = first
    data = json.loads(out)
    assert code == 1  # the classical Hf = per row fails
    failed = [row["label"] for row in data["rows"] if row["status"] == "FAIL"]
    assert failed == ["hf_per@4/numeric"]
    assert data["counts"]["skipped"] == 5


def test_bench_runs():
    code, out = call("bench", "--count", "5", "--n", "2")
    assert code == 0 and "memo engine" in out


def _module(*argv):
    return subprocess.run(
        [sys.executable, "-m", "qpfaff", *argv], capture_output=True, check=False
    )


def test_output_is_byte_stable():
    argv = ("verify", "--identity", "laplace", "--size", "3", "--format", "json")
    first, second = _module(*argv), _module(*argv)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    compute = ("compute", "--what", "B", "--n", "4", "--regime", "q-inverse")
    assert _module(*compute).stdout == _module(*compute).stdout


def test_module_usage_exit_code():
    proc = _module("verify")
    assert proc.returncode == 2
    assert b"usage" in proc.stderr
