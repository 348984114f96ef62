import csv
import io
import json
import subprocess
import sys

import mpmath
import pytest

from mzv_identities.cli import main
from mzv_identities.report import REPORT_FIELDS


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    try:
        code = main(list(argv), out, err)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    return code, out.getvalue(), err.getvalue()


def test_eval_c_coeff():
    assert run("eval", "c-coeff", "0", "0", "1")[:2] == (0, "-1/2\n")
    assert run("eval", "c-coeff", "0", "1", "1")[1] == "1\n"


def test_eval_mzv_digits():
    code, out, _ = run("eval", "mzv", "3", "--digits", "30")
    assert code == 0
    assert out.strip() == mpmath.nstr(mpmath.zeta(3), 30)
    assert len(out.strip().replace(".", "")) == 30


def test_eval_other_subjects():
    code, out, _ = run("eval", "zeta", "2", "--prec-bits", "100")
    assert code == 0 and abs(mpmath.mpf(out) - mpmath.pi ** 2 / 6) < 1e-29
    code, out, _ = run("eval", "h", "1", "0", "--digits", "20")
    lines = out.splitlines()
    assert code == 0 and [line.split()[0] for line in lines] == ["h_lhs", "h_rhs", "diff"]
    assert lines[0].split()[1] == "0.22881039760335375977"
    code, out, _ = run("eval", "f32", "1", "1", "1", "2", "3/2", "--digits", "25")
    assert code == 0 and out.strip() == mpmath.nstr(mpmath.pi ** 2 / 4, 25)
    code, out, _ = run("eval", "mzv", "2", "3")
    assert code == 0 and out.startswith("0.228810397603353759768746148941688791932509342719882160229")


@pytest.mark.parametrize("argv", [
    ("eval", "mzv"),
    ("eval", "mzv", "3", "1"),
    ("eval", "mzv", "x"),
    ("eval", "zeta", "1"),
    ("eval", "c-coeff", "0", "0", "5"),
    ("eval", "f32", "1", "1", "1", "1", "1"),
    ("eval", "f32", "1", "1"),
    ("eval", "h", "-1", "0"),
    ("eval", "zeta", "3", "--digits", "30", "--prec-bits", "100"),
    ("eval", "zeta", "3", "--prec-bits", "20"),
    ("eval", "bogus"),
    ("table", "-1"),
    ("check", "--identities", "eq42"),
    ("check", "--tol", "eq4"),
    ("check", "--trials", "-3"),
    (),
])
def test_usage_errors_exit_2(argv):
    code, out, err = run(*argv)
    assert code == 2
    assert out == ""


def test_diagnostic_is_one_line():
    code, _, err = run("eval", "mzv")
    assert code == 2 and err.count("\n") == 1 and err.startswith("error:")


def test_check_eq1_text():
    code, out, _ = run("check", "--identities", "eq1", "--max-ab", "3")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 11 and all(line.startswith("PASS eq1") for line in lines[:10])
    assert lines[-1] == "10/10 checks passed"


def test_check_trials_zero():
    code, out, _ = run("check", "--trials", "0")
    assert code == 0 and out.strip() == "0/0 checks passed"


def test_check_json_schema():
    code, out, err = run("check", "--identities", "eq4,reflection", "--trials", "2", "--json", "--seed", "42")
    assert code == 0 and err.strip() == "4/4 checks passed"
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 4
    for row in rows:
        assert list(row) == list(REPORT_FIELDS)
        assert isinstance(row["pass"], bool) and isinstance(row["precision_bits"], int)
        assert row["seed"] == 42 and isinstance(row["params"], dict)
        assert all(isinstance(row[k], str) for k in ("lhs", "rhs", "abs_diff", "rel_diff", "tolerance"))


def test_check_csv():
    code, out, _ = run("check", "--identities", "eq9", "--trials", "3", "--csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 3
    assert all(r["pass"] == "true" and json.loads(r["params"])["rng"] == "PCG64" for r in rows)


def test_check_failure_exit_1():
    code, out, _ = run("check", "--identities", "reflection", "--trials", "2", "--tol", "reflection=1e-300")
    assert code == 1 and "FAIL" in out


def test_check_precision_flags():
    code, out, _ = run("check", "--identities", "eq1", "--max-ab", "0", "--digits", "30", "--json")
    row = json.loads(out)
    assert code == 0 and row["precision_bits"] == 116


def test_check_json_deterministic():
    argv = ("check", "--identities", "eq4", "--seed", "42", "--json", "--trials", "5")
    assert run(*argv)[1] == run(*argv)[1]


def test_table():
    code, out, _ = run("table", "1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [(r["a"], r["b"]) for r in rows] == [("0", "0"), ("1", "0"), ("0", "1")]
    assert list(rows[0]) == ["a", "b", "weight", "H_lhs", "H_rhs", "abs_diff", "c_coeffs"]
    assert float(rows[0]["abs_diff"]) <= 1e-30
    assert rows[0]["c_coeffs"] == "-1/2" and rows[1]["c_coeffs"] == "-3/2;-11/4"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mzv_identities", "eval", "c-coeff", "1", "0", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "-11/4\n"
    proc = subprocess.run([sys.executable, "-m", "mzv_identities", "eval", "mzv"], capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stderr.count("\n") == 1
