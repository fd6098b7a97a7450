"""CLI surface: output contracts, exit codes, determinism."""

import json

import pytest

from catbin.cli import main, parse_alpha
from catbin.arith import RationalComplex
from fractions import Fraction


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_alpha():
    assert parse_alpha("1/2") == Fraction(1, 2)
    assert parse_alpha("-5") == Fraction(-5)
    assert parse_alpha("3/20,1/5") == RationalComplex(Fraction(3, 20), Fraction(1, 5))
    from catbin.cli import UsageError

    with pytest.raises(UsageError):
        parse_alpha("x/y")


def test_asym_central_table(capsys):
    code, out, _ = run(capsys, "asym", "central", "--order", "3")
    assert code == 0
    assert "1, 1/24, 59/384, 2425/9216" in out
    assert "4^(n+1)" in out and "sqrt(pi*n)" in out


def test_asym_catalan_table(capsys):
    code, out, _ = run(capsys, "asym", "catalan", "--order", "3")
    assert code == 0
    assert "1, -5/8, 475/384, 1225/9216" in out
    assert "n^(-1)" in out


def test_asym_a002457_table(capsys):
    code, out, _ = run(capsys, "asym", "a002457", "--order", "3")
    assert code == 0
    assert "1, 3/8, -7/128, 9/1024" in out


def test_asym_json_schema(capsys):
    code, out, _ = run(capsys, "asym", "central", "--order", "1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "catbin/1"
    assert payload["expansion"]["coeffs"] == ["1/1", "1/24"]


def test_asym_csv(capsys):
    code, out, _ = run(capsys, "asym", "central", "--order", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[2] == "i,coefficient"
    assert lines[3] == "0,1/1"
    assert lines[5] == "2,59/384"


def test_asym_large_order_warns_but_runs(capsys):
    code, out, err = run(capsys, "asym", "central", "--order", "9")
    assert code == 0
    assert "exceeds the default maximum" in err
    assert out.count(",") >= 9


def test_asym_negative_order_rejected(capsys):
    code, _, err = run(capsys, "asym", "central", "--order", "-1")
    assert code == 2
    assert "nonnegative" in err


def test_verify_asym_pass(capsys):
    code, out, _ = run(
        capsys, "verify-asym", "central", "--order", "3",
        "--n-list", "500,1000", "--precision", "128",
    )
    assert code == 0
    assert "PASS" in out


def test_verify_asym_csv_columns(capsys):
    code, out, _ = run(
        capsys, "verify-asym", "catalan", "--order", "0",
        "--n-list", "100,200", "--precision", "128", "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1] == "n,exact,approx,ratio,residual,precision,precision_ok"
    first = lines[2].split(",")
    assert first[0] == "100"
    assert first[1] == str(sum(__import__("math").comb(2 * k, k) // (k + 1) for k in range(101)))
    assert first[5] == "128"


def test_verify_asym_empty_nlist_usage_error(capsys):
    code, _, err = run(capsys, "verify-asym", "central", "--order", "3")
    assert code == 2
    assert "no n values" in err


def test_verify_asym_low_precision_rejected(capsys):
    code, _, err = run(
        capsys, "verify-asym", "central", "--n", "100", "--precision", "32"
    )
    assert code == 2
    assert "64" in err


def test_sum_exact_values(capsys):
    code, out, _ = run(capsys, "sum", "central", "--n-list", "0,4,8")
    assert code == 0
    assert "n=4: 99" in out and "n=8: 17577" in out


def test_sum_weighted_rational(capsys):
    code, out, _ = run(capsys, "sum", "central", "--n", "2", "--alpha", "1/4", "--format", "csv")
    assert code == 0
    assert out.strip().splitlines()[-1] == "2,15/8"


def test_weighted_quarter_exact(capsys):
    code, out, _ = run(capsys, "weighted", "--alpha", "1/4", "--n-list", "2,10")
    assert code == 0
    assert "regime 4" in out
    assert "PASS" in out


def test_weighted_dominant(capsys):
    code, out, _ = run(
        capsys, "weighted", "--alpha", "1/2", "--n-list", "100,400", "--precision", "128"
    )
    assert code == 0
    assert "regime 1" in out and "PASS" in out


def test_weighted_boundary_json(capsys):
    code, out, _ = run(
        capsys, "weighted", "--alpha=-1/4", "--n-list", "400,1600",
        "--precision", "128", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["regime"] == 3
    assert 0.3 < payload["observed_exponent"] < 0.7
    assert payload["passed"] is True


def test_weighted_zero_alpha_rejected(capsys):
    code, _, err = run(capsys, "weighted", "--alpha", "0", "--n", "5")
    assert code == 2
    assert "degenerate" in err


def test_modp_single_q(capsys):
    code, out, _ = run(capsys, "modp", "--q", "7")
    assert code == 0
    assert "PASS" in out


def test_modp_rejects_composite(capsys):
    code, _, err = run(capsys, "modp", "--q", "12")
    assert code == 2
    assert "not a prime power" in err


def test_modp_json_lines(capsys):
    code, out, _ = run(capsys, "modp", "--sweep", "30", "--format", "json")
    assert code == 0
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert [r["q"] for r in rows] == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]
    assert all(r["theorem3"] == "pass" and r["theorem4"] == "pass" for r in rows)
    assert rows[0]["xd"] == "n/a" and rows[1]["xd"] == "pass"


def test_modp_csv(capsys):
    code, out, _ = run(capsys, "modp", "--sweep", "12", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[1] == "q,p,e,theorem3,theorem4,degree,eq9_central,eq9_catalan,legendre,xd"
    assert lines[2].startswith("2,2,1,pass,pass,pass")


def test_mutually_exclusive_q_and_sweep(capsys):
    code, _, err = run(capsys, "modp", "--q", "7", "--sweep", "50")
    assert code == 2
    assert "mutually exclusive" in err


def test_output_is_deterministic(capsys):
    args = ("verify-asym", "central", "--order", "2", "--n-list", "300,600",
            "--precision", "128", "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second


def test_precision_env_default(capsys, monkeypatch):
    monkeypatch.setenv("CATBIN_PRECISION", "128")
    code, out, _ = run(capsys, "verify-asym", "central", "--n", "200")
    assert code == 0
    assert "128 bits" in out


def test_precision_env_invalid(capsys, monkeypatch):
    monkeypatch.setenv("CATBIN_PRECISION", "lots")
    code, _, err = run(capsys, "verify-asym", "central", "--n", "200")
    assert code == 2
    assert "CATBIN_PRECISION" in err


def test_bad_subcommand_exits_2(capsys):
    code = main(["frobnicate"])
    capsys.readouterr()
    assert code == 2


def test_help_exits_0(capsys):
    code = main(["--help"])
    capsys.readouterr()
    assert code == 0
