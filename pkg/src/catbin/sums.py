"""Exact partial sums, identity checks, and numeric verification.

Exact side: partial sums of binom(2k,k) and C_k (and their alpha-weighted
variants for exact rational or rational-complex alpha) via the multiplicative
recurrence binom(2k+2,k+1) = binom(2k,k) * 2(2k+1)/(k+1), so a sum to n costs
O(n) big-integer operations and no factorials are ever formed.

Numeric side: expansions are evaluated with mpmath at an explicit binary
precision (default 256 bits).  Residuals difference two nearly equal
quantities, so every residual-style result is recomputed at twice the
precision and rejected if the two disagree; this guards against silent
catastrophic cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

from .arith import RationalComplex
from .darboux import (
    REGIME_BOUNDARY,
    REGIME_DOMINANT,
    REGIME_INSIDE,
    REGIME_QUARTER,
    AsymExpansion,
    WeightedRegime,
    a002457_expansion,
    theorem1_expansion,
    theorem2_expansion,
    weighted_first_order,
)

DEFAULT_PRECISION = 256
MIN_PRECISION = 64

# Two-precision agreement threshold for residual-style quantities (which are
# O(1) numbers by construction).
_AGREEMENT_TOL = 1e-9

KINDS = ("central", "catalan", "a002457")


class PrecisionError(ArithmeticError):
    """Raised when a doubled-precision recomputation disagrees."""


def central_binomials(n: int):
    """Yield binom(2k,k) for k = 0..n by the multiplicative recurrence."""
    b = 1
    for k in range(n + 1):
        yield b
        b = b * (2 * (2 * k + 1)) // (k + 1)


def central_partial_sum(n: int) -> int:
    """Exact sum of binom(2k,k) for k <= n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(central_binomials(n))


def catalan_partial_sum(n: int) -> int:
    """Exact sum of C_k for k <= n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return sum(b // (k + 1) for k, b in enumerate(central_binomials(n)))


def exact_partial_sum(kind: str, n: int):
    """Exact n-th partial sum for a verification kind (int or Fraction)."""
    if kind == "central":
        return central_partial_sum(n)
    if kind == "catalan":
        return catalan_partial_sum(n)
    if kind == "a002457":
        return weighted_partial_sum(Fraction(1, 4), n)
    raise ValueError(f"unknown kind {kind!r}")


def weighted_partial_sum(alpha, n: int, kind: str = "central", precision: int = DEFAULT_PRECISION):
    """Sum of alpha^k binom(2k,k) (or alpha^k C_k) for k <= n.

    Exact (Fraction / RationalComplex result) when alpha is a Fraction or a
    RationalComplex; numeric at the stated precision when alpha is a float,
    complex, or mpmath value.  alpha = 0 gives 1 for every n.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if kind not in ("central", "catalan"):
        raise ValueError(f"unknown kind {kind!r}")
    if isinstance(alpha, (float, complex, mpmath.mpf, mpmath.mpc)):
        return _weighted_partial_sum_numeric(alpha, n, kind, precision)
    if isinstance(alpha, RationalComplex):
        re, im = alpha.re, alpha.im
    else:
        re, im = Fraction(alpha), Fraction(0)
    den = math.lcm(re.denominator, im.denominator)
    u = re.numerator * (den // re.denominator)
    v = im.numerator * (den // im.denominator)

    # accumulate sum(c_k (u+vi)^k den^{n-k}) over den^n, all integers
    acc_re, acc_im = 0, 0
    pow_re, pow_im = 1, 0
    scale = den**n
    b = 1
    for k in range(n + 1):
        c = b if kind == "central" else b // (k + 1)
        acc_re += c * pow_re * scale
        acc_im += c * pow_im * scale
        if k < n:
            scale //= den
            pow_re, pow_im = pow_re * u - pow_im * v, pow_re * v + pow_im * u
            b = b * (2 * (2 * k + 1)) // (k + 1)
    total = den**n
    if v == 0 and im == 0 and not isinstance(alpha, RationalComplex):
        return Fraction(acc_re, total)
    return RationalComplex(Fraction(acc_re, total), Fraction(acc_im, total))


def _weighted_partial_sum_numeric(alpha, n: int, kind: str, precision: int):
    if precision < MIN_PRECISION:
        raise ValueError(f"precision below {MIN_PRECISION} bits rejected")
    with mp.workprec(precision):
        a = mpmath.mpc(alpha)
        acc = mpmath.mpc(0)
        pw = mpmath.mpc(1)
        b = 1
        for k in range(n + 1):
            c = b if kind == "central" else b // (k + 1)
            acc += c * pw
            pw *= a
            b = b * (2 * (2 * k + 1)) // (k + 1)
        if mpmath.im(acc) == 0 and mpmath.im(a) == 0:
            return mpmath.re(acc)
        return acc


def frobenius_identity_check(k: int) -> bool:
    """sum_j binom(k,j)^2 == binom(2k,k), exactly."""
    return sum(math.comb(k, j) ** 2 for j in range(k + 1)) == math.comb(2 * k, k)


def quarter_closed_form_check(n: int) -> bool:
    """Partial sum at alpha = 1/4 equals (2n+1) binom(2n,n)/4^n, exactly."""
    closed = Fraction((2 * n + 1) * math.comb(2 * n, n), 4**n)
    return weighted_partial_sum(Fraction(1, 4), n) == closed


def quarter_closed_form_sweep(n_max: int) -> bool:
    """quarter_closed_form_check for every n <= n_max, incrementally."""
    acc = 0  # 4^n * partial sum
    b = 1
    for n in range(n_max + 1):
        acc = 4 * acc + b if n else 1
        if acc != (2 * n + 1) * b:
            return False
        b = b * (2 * (2 * n + 1)) // (n + 1)
    return True


def _to_mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _to_mpc(x):
    if isinstance(x, RationalComplex):
        return mpmath.mpc(_to_mpf(x.re), _to_mpf(x.im))
    return mpmath.mpc(_to_mpf(x))


def prefactor_value(exp: AsymExpansion, n: int, precision: int = DEFAULT_PRECISION):
    """Numeric value of the expansion's prefactor at n."""
    with mp.workprec(precision):
        val = _to_mpf(exp.constant)
        if exp.pow4_offset is not None:
            val *= mpmath.mpf(4) ** (n + exp.pow4_offset)
        if exp.n_power:
            val *= mpmath.mpf(n) ** _to_mpf(exp.n_power)
        if exp.sqrt_pi_n:
            val /= mpmath.sqrt(mpmath.pi * n)
        return val


def _series_value(exp: AsymExpansion, n: int):
    # Horner in 1/n, highest coefficient first
    inv_n = mpmath.mpf(1) / n
    acc = mpmath.mpf(0)
    for c in reversed(exp.coeffs):
        acc = acc * inv_n + _to_mpf(c)
    return acc


def eval_asym(exp: AsymExpansion, n: int, precision: int = DEFAULT_PRECISION):
    """Numeric value of prefactor * sum gamma_i n^-i at the stated precision."""
    if n < 1:
        raise ValueError("n must be positive")
    if precision < MIN_PRECISION:
        raise ValueError(f"precision below {MIN_PRECISION} bits rejected")
    with mp.workprec(precision):
        return prefactor_value(exp, n, precision) * _series_value(exp, n)


def _agree(a, b) -> bool:
    return abs(a - b) <= _AGREEMENT_TOL * (1 + max(abs(a), abs(b)))


def _residual_from_exact(exp: AsymExpansion, exact, n: int, bits: int):
    with mp.workprec(bits):
        defect = _to_mpf(exact) / prefactor_value(exp, n, bits) - _series_value(exp, n)
        return defect * mpmath.mpf(n) ** (exp.order + 1)


def residual_scaling(
    exp: AsymExpansion, kind: str, n: int, precision: int = DEFAULT_PRECISION
):
    """n^{m+1} * (exact/prefactor - series): tends to gamma_{m+1}.

    Computed twice (at precision and 2*precision); disagreement raises
    PrecisionError, since the inner difference cancels almost completely.
    """
    if precision < MIN_PRECISION:
        raise ValueError(f"precision below {MIN_PRECISION} bits rejected")
    exact = exact_partial_sum(kind, n)
    first = _residual_from_exact(exp, exact, n, precision)
    second = _residual_from_exact(exp, exact, n, 2 * precision)
    if not _agree(first, second):
        raise PrecisionError(
            f"residual at n={n} unstable: {first} vs {second} at doubled precision"
        )
    return first


def expansion_for(kind: str, m: int) -> AsymExpansion:
    if kind == "central":
        return theorem1_expansion(m)
    if kind == "catalan":
        return theorem2_expansion(m)
    if kind == "a002457":
        return a002457_expansion(m)
    raise ValueError(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class VerifyRow:
    n: int
    exact: object  # int or Fraction
    approx: object  # mpf
    ratio: object  # mpf
    residual: object  # mpf, n^{m+1} * series defect
    precision: int
    precision_ok: bool


@dataclass(frozen=True)
class VerifyReport:
    kind: str
    order: int
    precision: int
    rows: tuple
    residual_spread: float | None  # max|residual| / min|residual| over rows
    passed: bool


def _verify_one(kind: str, m: int, precision: int, n: int) -> VerifyRow:
    exp = expansion_for(kind, m)
    exact = exact_partial_sum(kind, n)
    approx = eval_asym(exp, n, precision)
    with mp.workprec(precision):
        ratio = _to_mpf(exact) / approx
    residual = _residual_from_exact(exp, exact, n, precision)
    check = _residual_from_exact(exp, exact, n, 2 * precision)
    return VerifyRow(n, exact, approx, ratio, residual, precision, _agree(residual, check))


def verify_expansion(
    kind: str, m: int, ns, precision: int = DEFAULT_PRECISION, jobs: int = 1
) -> VerifyReport:
    """Per-n comparison of the exact sums with an order-m expansion.

    Pass criteria (rate-based; the error terms carry no explicit constants):
    the scaled residuals n^{m+1} * defect must be finite and agree across the
    n list within a factor of 4, and the ratio exact/approx must be closer to
    1 at the largest n than at the smallest (when more than one n is given).
    """
    if not ns:
        raise ValueError("empty n list")
    ns = sorted(set(ns))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        from functools import partial

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(partial(_verify_one, kind, m, precision), ns))
    else:
        rows = [_verify_one(kind, m, precision, n) for n in ns]

    magnitudes = [abs(r.residual) for r in rows if r.precision_ok]
    spread = float(max(magnitudes) / min(magnitudes)) if magnitudes and min(magnitudes) > 0 else None
    passed = all(r.precision_ok for r in rows)
    if spread is not None and len(rows) > 1:
        passed = passed and spread < 4.0
    if len(rows) > 1:
        passed = passed and abs(rows[-1].ratio - 1) <= abs(rows[0].ratio - 1)
    return VerifyReport(kind, m, precision, tuple(rows), spread, passed)


def regime_reference_value(regime: WeightedRegime, n: int, precision: int = DEFAULT_PRECISION):
    """Numeric value of the regime's first-order formula at n."""
    with mp.workprec(precision):
        if regime.regime == REGIME_DOMINANT:
            fa = _to_mpc(regime.four_alpha())
            value = fa ** (n + 1) / ((fa - 1) * mpmath.sqrt(mpmath.pi * n))
        elif regime.regime in (REGIME_INSIDE, REGIME_BOUNDARY):
            value = 1 / mpmath.sqrt(_to_mpc(regime.radicand()))
        else:
            value = _to_mpf(regime.quarter_exact(n))
        if mpmath.im(value) == 0:
            return mpmath.re(value)
        return value


@dataclass(frozen=True)
class WeightedRow:
    n: int
    partial_sum: object  # mpf/mpc rendering of the exact sum
    reference: object
    error: object  # |sum - reference| (|ratio - 1| in the dominant regime)
    precision: int
    precision_ok: bool


@dataclass(frozen=True)
class WeightedReport:
    regime: WeightedRegime
    precision: int
    rows: tuple
    observed_exponent: float | None  # decay rate fitted between first/last n
    passed: bool


def _weighted_error(regime, alpha, n, precision):
    exact = weighted_partial_sum(alpha, n)
    with mp.workprec(precision):
        sum_val = _to_mpc(exact) if isinstance(exact, RationalComplex) else _to_mpf(exact)
        ref = regime_reference_value(regime, n, precision)
        if regime.regime == REGIME_DOMINANT:
            err = abs(sum_val / ref - 1)
        else:
            err = abs(sum_val - ref)
        if mpmath.im(sum_val) == 0:
            sum_val = mpmath.re(sum_val)
        return sum_val, ref, err


def weighted_regime_verify(alpha, ns, precision: int = DEFAULT_PRECISION) -> WeightedReport:
    """Compare exact weighted sums against the first-order regime formula.

    The observed error-decay exponent is fitted between the smallest and
    largest n and reported against the claimed rates (3/2, 1, 1/2).  Pass
    rules per regime: dominant - final relative error < 1e-2; inside - error
    below 1e-12 or decaying at least as fast as claimed (within 0.3); boundary
    - final error < 1e-1 and observed exponent within 0.2 of 1/2; quarter -
    exact rational equality for every n.
    """
    if not ns:
        raise ValueError("empty n list")
    ns = sorted(set(ns))
    regime = weighted_first_order(alpha)
    rows = []
    for n in ns:
        sum_val, ref, err = _weighted_error(regime, alpha, n, precision)
        _, _, err2 = _weighted_error(regime, alpha, n, 2 * precision)
        ok = bool(abs(err - err2) <= _AGREEMENT_TOL * (1 + err2)) or float(err2) < 1e-30
        rows.append(WeightedRow(n, sum_val, ref, err, precision, ok))

    observed = None
    if len(rows) > 1 and rows[0].error > 0 and rows[-1].error > 0:
        observed = float(
            mpmath.log(rows[0].error / rows[-1].error) / mpmath.log(Fraction(ns[-1], ns[0]))
        )

    final_err = float(rows[-1].error)
    if regime.regime == REGIME_QUARTER:
        passed = all(
            weighted_partial_sum(alpha, n) == regime.quarter_exact(n) for n in ns
        )
    elif regime.regime == REGIME_DOMINANT:
        passed = final_err < 1e-2
    elif regime.regime == REGIME_INSIDE:
        passed = final_err < 1e-12 or (observed is not None and observed >= 0.7)
    else:
        passed = final_err < 1e-1 and (
            observed is None or abs(observed - 0.5) <= 0.2
        )
    return WeightedReport(regime, precision, tuple(rows), observed, passed)
