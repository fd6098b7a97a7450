"""Command-line interface.

Subcommands: asym, verify-asym, sum, weighted, modp.  Every run is
deterministic given its arguments; the effective config is echoed into each
report header.  Exit codes: 0 all checks passed, 1 a mathematical check
failed, 2 usage or configuration error.

Exact values (integers, rationals) are printed exactly; numeric values carry
an explicit "~" in table output and a digit count derived from the working
precision everywhere else.  Default precision is 256 bits, overridable with
the CATBIN_PRECISION environment variable or --precision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import mpmath

from . import modp, sums
from .arith import PrimePower, RationalComplex, format_mod, format_rational
from .sums import DEFAULT_PRECISION, MIN_PRECISION

SCHEMA = "catbin/1"
DEFAULT_ORDER = 3
MAX_DEFAULT_ORDER = 8
DEFAULT_SWEEP = 2000

VERIFY_CSV_COLUMNS = "n,exact,approx,ratio,residual,precision,precision_ok"
WEIGHTED_CSV_COLUMNS = "n,partial_sum,reference,error,precision,precision_ok"
MODP_CSV_COLUMNS = "q,p,e,theorem3,theorem4,degree,eq9_central,eq9_catalan,legendre,xd"


class UsageError(Exception):
    pass


def _default_precision() -> int:
    env = os.environ.get("CATBIN_PRECISION")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"CATBIN_PRECISION={env!r} is not an integer")
    return DEFAULT_PRECISION


def _digits(precision: int) -> int:
    return max(6, int(precision * 0.30103) - 2)


def _fmt(x, precision: int, approx_mark: bool = False) -> str:
    """Numeric (mpf/mpc) rendering; exact ints/Fractions print exactly."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, RationalComplex):
        return str(x)
    s = mpmath.nstr(x, _digits(precision))
    return f"~{s}" if approx_mark else s


def parse_alpha(text: str):
    """Parse "a/b" (rational) or "re,im" (rational complex) alpha values."""
    try:
        if "," in text:
            re_s, im_s = text.split(",")
            return RationalComplex(Fraction(re_s.strip()), Fraction(im_s.strip()))
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse alpha {text!r}: {exc}")


def parse_n_list(args) -> list[int]:
    ns = []
    if getattr(args, "n", None) is not None:
        ns.append(args.n)
    if getattr(args, "n_list", None):
        for part in args.n_list.split(","):
            part = part.strip()
            if part:
                ns.append(int(part))
    if not ns:
        raise UsageError("no n values given (use --n or --n-list)")
    if any(n < 0 for n in ns):
        raise UsageError("n values must be nonnegative")
    return sorted(set(ns))


def _check_precision(precision: int) -> int:
    if precision < MIN_PRECISION:
        raise UsageError(f"precision must be at least {MIN_PRECISION} bits")
    return precision


def _config_string(args, keys) -> str:
    parts = [args.command]
    if getattr(args, "kind", None) is not None:
        parts.append(args.kind)
    for key in keys:
        val = getattr(args, key.replace("-", "_"), None)
        if val is not None:
            parts.append(f"--{key}={val}")
    return " ".join(parts)


def _emit_json(payload: dict):
    print(json.dumps(payload, indent=2))


# ---------------------------------------------------------------- asym


def cmd_asym(args) -> int:
    if args.order < 0:
        raise UsageError("--order must be nonnegative")
    if args.order > MAX_DEFAULT_ORDER:
        print(
            f"warning: order {args.order} exceeds the default maximum "
            f"{MAX_DEFAULT_ORDER}; extending the Bernoulli table",
            file=sys.stderr,
        )
    exp = sums.expansion_for(args.kind, args.order)
    config = _config_string(args, ["order", "format"])
    if args.format == "json":
        _emit_json(
            {
                "schema": SCHEMA,
                "config": config,
                "kind": args.kind,
                "order": args.order,
                "expansion": exp.to_json(),
            }
        )
    elif args.format == "csv":
        print(f"# {config}")
        print(f"# prefactor: {exp.prefactor_str()}")
        print("i,coefficient")
        for i, c in enumerate(exp.coeffs):
            print(f"{i},{format_rational(c)}")
    else:
        print(f"# {config}")
        print(f"kind: {args.kind}")
        print(f"prefactor: {exp.prefactor_str()}")
        print(f"coefficients: {', '.join(str(c) for c in exp.coeffs)}")
        print(f"error term: O(n^-({exp.error_exponent})) after removing the 4^n factor")
    return 0


# ---------------------------------------------------------- verify-asym


def cmd_verify_asym(args) -> int:
    if args.order < 0:
        raise UsageError("--order must be nonnegative")
    ns = parse_n_list(args)
    if min(ns) < 1:
        raise UsageError("verification requires n >= 1")
    precision = _check_precision(args.precision)
    report = sums.verify_expansion(args.kind, args.order, ns, precision, jobs=args.jobs)
    config = _config_string(args, ["order", "n-list", "precision", "format", "jobs"])
    if args.format == "json":
        _emit_json(
            {
                "schema": SCHEMA,
                "config": config,
                "kind": report.kind,
                "order": report.order,
                "precision": report.precision,
                "rows": [
                    {
                        "n": r.n,
                        "exact": str(r.exact),
                        "approx": _fmt(r.approx, precision),
                        "ratio": _fmt(r.ratio, precision),
                        "residual": _fmt(r.residual, precision),
                        "precision": r.precision,
                        "precision_ok": r.precision_ok,
                    }
                    for r in report.rows
                ],
                "residual_spread": report.residual_spread,
                "passed": report.passed,
            }
        )
    elif args.format == "csv":
        print(f"# {config}")
        print(VERIFY_CSV_COLUMNS)
        for r in report.rows:
            print(
                f"{r.n},{r.exact},{_fmt(r.approx, precision)},"
                f"{_fmt(r.ratio, precision)},{_fmt(r.residual, precision)},"
                f"{r.precision},{r.precision_ok}"
            )
    else:
        print(f"# {config}")
        print(f"kind: {report.kind}   order: {report.order}   precision: {precision} bits")
        for r in report.rows:
            print(
                f"n={r.n}  ratio {_fmt(r.ratio, precision, approx_mark=True)}  "
                f"scaled residual {_fmt(r.residual, precision, approx_mark=True)}"
                f"{'' if r.precision_ok else '  [precision unstable]'}"
            )
        if report.residual_spread is not None:
            print(f"residual spread across n list: {report.residual_spread:.6f} (must stay < 4)")
        print("PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


# ----------------------------------------------------------------- sum


def cmd_sum(args) -> int:
    ns = parse_n_list(args)
    alpha = parse_alpha(args.alpha) if args.alpha is not None else None
    config = _config_string(args, ["n", "n-list", "alpha", "format"])
    rows = []
    for n in ns:
        if alpha is None:
            value = sums.exact_partial_sum(args.kind, n)
        else:
            value = sums.weighted_partial_sum(alpha, n, args.kind)
        rows.append((n, value))
    if args.format == "json":
        _emit_json(
            {
                "schema": SCHEMA,
                "config": config,
                "kind": args.kind,
                "alpha": str(alpha) if alpha is not None else None,
                "rows": [{"n": n, "value": str(v)} for n, v in rows],
            }
        )
    elif args.format == "csv":
        print(f"# {config}")
        print("n,value")
        for n, v in rows:
            print(f"{n},{v}")
    else:
        print(f"# {config}")
        for n, v in rows:
            print(f"n={n}: {v}")
    return 0


# ------------------------------------------------------------- weighted


def cmd_weighted(args) -> int:
    alpha = parse_alpha(args.alpha)
    zero = alpha == 0 if isinstance(alpha, Fraction) else (alpha.re == 0 and alpha.im == 0)
    if zero:
        raise UsageError("alpha = 0 is degenerate: every partial sum is 1")
    ns = parse_n_list(args)
    if min(ns) < 1:
        raise UsageError("weighted verification requires n >= 1")
    precision = _check_precision(args.precision)
    report = sums.weighted_regime_verify(alpha, ns, precision)
    regime = report.regime
    config = _config_string(args, ["alpha", "n-list", "precision", "format"])
    claimed = str(regime.error_exponent) if regime.error_exponent is not None else "exact"
    if args.format == "json":
        _emit_json(
            {
                "schema": SCHEMA,
                "config": config,
                "alpha": str(regime.alpha),
                "regime": regime.regime,
                "description": regime.description,
                "claimed_rate": claimed,
                "observed_exponent": report.observed_exponent,
                "rows": [
                    {
                        "n": r.n,
                        "partial_sum": _fmt(r.partial_sum, precision),
                        "reference": _fmt(r.reference, precision),
                        "error": _fmt(r.error, precision),
                        "precision": r.precision,
                        "precision_ok": r.precision_ok,
                    }
                    for r in report.rows
                ],
                "passed": report.passed,
            }
        )
    elif args.format == "csv":
        print(f"# {config}")
        print(f"# regime {regime.regime}: {regime.description}")
        print(WEIGHTED_CSV_COLUMNS)
        for r in report.rows:
            print(
                f"{r.n},{_fmt(r.partial_sum, precision)},{_fmt(r.reference, precision)},"
                f"{_fmt(r.error, precision)},{r.precision},{r.precision_ok}"
            )
    else:
        print(f"# {config}")
        print(f"alpha = {regime.alpha}: regime {regime.regime}")
        print(regime.description)
        print(f"claimed error rate: O(n^-{claimed})" if claimed != "exact" else "closed form is exact")
        for r in report.rows:
            print(
                f"n={r.n}  sum {_fmt(r.partial_sum, precision, approx_mark=True)}  "
                f"reference {_fmt(r.reference, precision, approx_mark=True)}  "
                f"error {_fmt(r.error, precision, approx_mark=True)}"
            )
        if report.observed_exponent is not None:
            print(f"observed decay exponent: {report.observed_exponent:.4f}")
        print("PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


# ----------------------------------------------------------------- modp


def cmd_modp(args) -> int:
    if args.q is not None and args.sweep is not None:
        raise UsageError("--q and --sweep are mutually exclusive")
    if args.q is not None:
        try:
            target = PrimePower.from_q(args.q)
        except ValueError as exc:
            raise UsageError(str(exc))
        config = _config_string(args, ["q", "format", "jobs"])
        rows = [modp.check_prime_power(target)]
    else:
        if args.sweep is None:
            args.sweep = DEFAULT_SWEEP
        if args.sweep < 2:
            raise UsageError("--sweep bound must be at least 2")
        config = _config_string(args, ["sweep", "format", "jobs"])
        rows = modp.sweep(args.sweep, jobs=args.jobs)
    passed = all(r.passed for r in rows)
    if args.format == "json":
        for row in rows:
            print(row.to_json_line())
    elif args.format == "csv":
        print(f"# {config}")
        print(MODP_CSV_COLUMNS)
        for r in rows:
            j = r.to_json()
            print(
                f"{j['q']},{j['p']},{j['e']},{j['theorem3']},{j['theorem4']},"
                f"{j['degree']},{j['eq9_central']},{j['eq9_catalan']},"
                f"{j['legendre']},{j['xd']}"
            )
    else:
        print(f"# {config}")
        width = len(str(rows[-1].q.q)) if rows else 1
        for r in rows:
            j = r.to_json()
            print(
                f"q={j['q']:<{width}}  thm3 {j['theorem3']}  thm4 {j['theorem4']}  "
                f"degree {j['degree']}  "
                f"eq9 ({format_mod(j['eq9_central'], j['p'])}, "
                f"{format_mod(j['eq9_catalan'], j['p'])})  "
                f"legendre {j['legendre']:+d}  xd {j['xd']}"
            )
        print(f"{len(rows)} moduli checked: " + ("PASS" if passed else "FAIL"))
    return 0 if passed else 1


# ----------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catbin",
        description="Asymptotics and mod-p certificates for partial sums of "
        "central binomial coefficients and Catalan numbers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, precision=False, jobs=False, nlist=False):
        p.add_argument("--format", choices=("table", "json", "csv"), default="table")
        if precision:
            p.add_argument("--precision", type=int, default=None, help="working precision in bits")
        if jobs:
            p.add_argument("--jobs", type=int, default=1, help="parallel workers")
        if nlist:
            p.add_argument("--n", type=int, default=None)
            p.add_argument("--n-list", default=None, help="comma-separated n values")

    p = sub.add_parser("asym", help="print an exact asymptotic expansion")
    p.add_argument("kind", choices=("central", "catalan", "a002457"))
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    add_common(p)

    p = sub.add_parser("verify-asym", help="verify an expansion against exact sums")
    p.add_argument("kind", choices=("central", "catalan", "a002457"))
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    add_common(p, precision=True, jobs=True, nlist=True)

    p = sub.add_parser("sum", help="exact partial sums")
    p.add_argument("kind", choices=("central", "catalan"))
    p.add_argument("--alpha", default=None, help='weight: "a/b" or "re,im"')
    add_common(p, nlist=True)

    p = sub.add_parser("weighted", help="first-order verification of weighted sums")
    p.add_argument("--alpha", required=True, help='weight: "a/b" or "re,im"')
    add_common(p, precision=True, nlist=True)

    p = sub.add_parser("modp", help="prime-field polynomial certificates")
    p.add_argument("--q", type=int, default=None, help="single prime power")
    p.add_argument("--sweep", type=int, default=None, help="check all prime powers below this bound")
    add_common(p, jobs=True)

    return parser


_HANDLERS = {
    "asym": cmd_asym,
    "verify-asym": cmd_verify_asym,
    "sum": cmd_sum,
    "weighted": cmd_weighted,
    "modp": cmd_modp,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    if getattr(args, "precision", None) is None and hasattr(args, "precision"):
        try:
            args.precision = _default_precision()
        except UsageError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    try:
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
