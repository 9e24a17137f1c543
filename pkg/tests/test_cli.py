import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from rcbracket.algebra import ParamScalar
from rcbracket.cli import EXIT_DEGENERATE, EXIT_FAIL, EXIT_PASS, EXIT_USAGE, run_cli
from rcbracket.serialize import scalar_from_dict
from rcbracket.singular import solve_recurrence

lam, mu = ParamScalar.lam(), ParamScalar.mu()


def run(*argv):
    buf = io.StringIO()
    code = run_cli(list(argv), stdout=buf)
    return code, buf.getvalue()


def run_json(*argv):
    code, out = run(*argv)
    return code, json.loads(out)


def table_of(report):
    return {(c["i"], c["j"]): scalar_from_dict(c) for c in report["coefficients"]}


# -- examples ------------------------------------------------------------------


def test_singular_vector_N1_json():
    code, rep = run_json("singular-vector", "--n", "3", "--N", "1", "--symbolic", "--format", "json")
    assert code == EXIT_PASS
    assert rep["normalization"] == "A00=1" and rep["n"] == 3 and rep["N"] == 1
    T = table_of(rep)
    assert T[(0, 1)] == -lam / (mu * 2 + 1)
    assert T[(1, 0)] == -mu / (lam * 2 + 1)
    entry = next(c for c in rep["coefficients"] if (c["i"], c["j"]) == (0, 1))
    assert entry["expr"].startswith("-l/(2*m")
    cleared = {(c["i"], c["j"]): c["poly"] for c in rep["cleared"]["coefficients"]}
    assert cleared[(0, 1)] == "-2*l^2 - l"


def test_branching_example():
    code, rep = run_json("branching", "--lambda", "0", "--mu", "0", "--jmax", "2")
    assert code == EXIT_PASS
    assert rep["weights"] == ["0", "-2", "-4"]
    assert rep["multiplicities"] == [1, 1, 1]


def test_branching_symbolic():
    code, rep = run_json("branching", "--symbolic", "--jmax", "1")
    assert code == EXIT_PASS and rep["weights"] == ["l + m", "l + m - 2"]


def test_verify_symbolic_passes():
    code, rep = run_json("verify", "--n", "3", "--N", "2", "--symbolic")
    assert code == EXIT_PASS and rep["status"] == "pass"
    assert rep["checks"]["recurrence"] and rep["checks"]["annihilation"] and rep["checks"]["hypergeometric"]


def test_verify_at_point_passes():
    code, rep = run_json("verify", "--n", "4", "--N", "2", "--lambda", "2/3", "--mu", "-1/7")
    assert code == EXIT_PASS and rep["provenance"]["lambda"] == "2/3"


# -- exit code contract ---------------------------------------------------------


def test_injected_failure_exits_one():
    code, rep = run_json("verify", "--n", "3", "--N", "2", "--symbolic", "--perturb", "1,0")
    assert code == EXIT_FAIL and rep["status"] == "fail"
    assert rep["checks"]["recurrence"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--n", "2", "--N", "1", "--symbolic"],
        ["verify", "--n", "3", "--N", "-1", "--symbolic"],
        ["verify", "--n", "3", "--N", "1", "--lambda", "0.5", "--mu", "1"],
        ["verify", "--n", "3", "--N", "1", "--lambda", "1/0", "--mu", "1"],
        ["verify", "--n", "3", "--N", "1", "--lambda", "1/2"],
        ["bracket", "--n", "3", "--N", "1", "--f", "x1"],
        ["bracket", "--n", "3", "--N", "1", "--f", "x1+", "--g", "1"],
        ["bracket", "--n", "3", "--N", "1", "--f", "x4", "--g", "1"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_two(argv):
    assert run(*argv)[0] == EXIT_USAGE


def test_degenerate_exits_three():
    code, rep = run_json("singular-vector", "--n", "4", "--N", "2", "--lambda", "-1", "--mu", "1/3")
    assert code == EXIT_DEGENERATE and rep["status"] == "degenerate"
    assert "lambda=-1" in rep["error"]


def test_allow_degenerate_reports_failed_solve():
    # lambda=-1 is in the exclusion set for n=4; the solver still divides by 2*lambda+2
    code, rep = run_json("singular-vector", "--n", "4", "--N", "1", "--lambda", "-1", "--mu", "1/3", "--allow-degenerate")
    assert code == EXIT_DEGENERATE and "scan" in rep


def test_allow_degenerate_off_divisor_solves():
    # lambda=0 is in the exclusion set for n=4 but N=1 never divides by 2*lambda
    code, rep = run_json("singular-vector", "--n", "4", "--N", "1", "--lambda", "0", "--mu", "1/3", "--allow-degenerate")
    assert code == EXIT_PASS
    assert table_of(rep)[(1, 0)] == ParamScalar.coerce(Fraction(-1, 6))


def test_help_exits_zero(capsys):
    assert run("--help")[0] == 0


# -- round trip, determinism, formats ----------------------------------------------


@pytest.mark.parametrize("n,N", [(3, 2), (4, 3), (5, 2)])
def test_json_round_trip(n, N):
    _, rep = run_json("singular-vector", "--n", str(n), "--N", str(N), "--symbolic")
    T = solve_recurrence(n, N)
    assert table_of(rep) == T.entries


def test_json_round_trip_at_point():
    _, rep = run_json("singular-vector", "--n", "3", "--N", "3", "--lambda", "5/3", "--mu", "-3/4")
    assert table_of(rep) == solve_recurrence(3, 3, Fraction(5, 3), Fraction(-3, 4)).entries


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--n", "3", "--N", "2", "--symbolic", "--seed", "5"],
        ["scan", "--n", "4", "--N", "1", "--seed", "9"],
        ["bracket", "--n", "3", "--N", "1", "--f", "x1*x2", "--g", "x2", "--check-degree", "2"],
    ],
)
def test_byte_identical_reruns(argv):
    assert run(*argv) == run(*argv)


def test_seed_changes_scan():
    assert run("scan", "--n", "4", "--N", "1", "--seed", "1")[1] != run("scan", "--n", "4", "--N", "1", "--seed", "2")[1]


def test_csv_is_cleared_only():
    code, out = run("singular-vector", "--n", "3", "--N", "1", "--symbolic", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "i,j,cleared"
    assert "0,0,4*l*m + 2*l + 2*m + 1" in lines
    assert "/" not in out


def test_text_format():
    code, out = run("verify", "--n", "3", "--N", "1", "--symbolic", "--format", "text")
    assert code == EXIT_PASS
    assert out.startswith("verify: pass") and "A[0,1] = -l/(2*m + 1)" in out


def test_out_file(tmp_path):
    path = tmp_path / "rep.json"
    code, out = run("branching", "--lambda", "1", "--mu", "2", "--jmax", "0", "--out", str(path))
    assert code == EXIT_PASS and out == ""
    assert json.loads(path.read_text())["weights"] == ["3"]


def test_bracket_apply_and_input_file(tmp_path):
    code, rep = run_json("bracket", "--n", "3", "--N", "1", "--f", "x1^2 + x2^2 + x3^2", "--g", "1")
    assert code == EXIT_PASS and rep["result"] == "-6*m/(2*l + 1)"
    src = tmp_path / "pair.json"
    src.write_text(json.dumps({"f": "x1", "g": "x1"}))
    code, rep = run_json("bracket", "--n", "3", "--N", "1", "--input", str(src))
    assert rep["result"] == "1"


def test_bracket_check_degree_reports_weight():
    code, rep = run_json("bracket", "--n", "3", "--N", "1", "--check-degree", "2")
    assert code == EXIT_PASS
    assert rep["output_weight"] == "l + m - 2" and rep["checks"]["equivariance"]


def test_scan_report():
    code, rep = run_json("scan", "--n", "4", "--N", "1")
    assert code == EXIT_PASS
    assert ["-1", "-1"] in rep["flagged"]
    assert all(set(p) >= {"lambda", "mu", "dimension", "flagged"} for p in rep["points"])


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rcbracket", "branching", "--lambda", "0", "--mu", "0", "--jmax", "2", "--format", "text"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "0, -2, -4" in proc.stdout
