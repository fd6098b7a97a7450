"""Exact singularity analysis for the partial-sum generating functions.

The pipeline, all in exact rational arithmetic:

  1. The generating function of the 4^n-normalized partial sums is a rational
     prefactor times (1-z)^e, with its only singularity on the unit circle at
     z = 1.  ``recenter_at_one`` expands the prefactor in powers of w = 1-z.
  2. Attaching the exponent e gives a Puiseux expansion at z = 1; each term
     c_j (1-z)^{j+e} contributes c_j * binom(n-j-e-1, n) to the coefficient
     of z^n, and truncating after m terms leaves a power-of-n error term.
  3. Each generalized binomial is rewritten as binom(2n,n)/4^n times a finite
     product of factors 1/(2n/d - 1) with odd d, each an exact geometric
     series in 1/n, and binom(2n,n)*sqrt(pi n)/4^n itself is derived from the
     Bernoulli terms of the Stirling remainder.  Multiplying everything out
     yields the 1/n coefficients of the expansion.

The three expansions produced here (central, Catalan, quarter-weighted) have
prefactors 4^{n+1}/(3 sqrt(pi n)), 4^{n+1}/(3 n sqrt(pi n)) and 2 sqrt(n/pi);
their order-3 coefficient lists are reproduced exactly by the pipeline:
[1, 1/24, 59/384, 2425/9216], [1, -5/8, 475/384, 1225/9216] and
[1, 3/8, -7/128, 9/1024].

For the alpha-weighted variants only the first-order behaviour is provided,
with the four-way case split on |alpha| vs 1/4 decided exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import RationalComplex, bernoulli, binom, binom_rational, format_rational
from .series import QQ, TruncatedSeries

HALF = Fraction(1, 2)

PUISEUX_EXPONENTS = (Fraction(-1, 2), Fraction(0), Fraction(1, 2))


def substitute_one_minus(coeffs, order: int) -> TruncatedSeries:
    """Polynomial P(z) rewritten as a series in w = 1 - z (exact)."""
    out = [Fraction(0)] * (order + 1)
    for k, a in enumerate(coeffs):
        a = Fraction(a)
        if a == 0:
            continue
        sign = 1
        for j in range(min(k, order) + 1):
            out[j] += a * binom(k, j) * sign
            sign = -sign
    return TruncatedSeries.of(out, QQ, order)


def recenter_at_one(p_num, q_den, order: int) -> TruncatedSeries:
    """Taylor coefficients of P(z)/Q(z) in powers of w = 1 - z.

    Polynomials are coefficient sequences in z, constant term first.
    Q(1) = 0 means the rational prefactor itself is singular at z = 1 and is
    rejected.
    """
    pw = substitute_one_minus(p_num, order)
    qw = substitute_one_minus(q_den, order)
    if qw.coeffs[0] == 0:
        raise ValueError("Q(1) = 0: prefactor singular at z = 1")
    return pw * qw.inverse()


@dataclass(frozen=True)
class PuiseuxExpansion:
    """Sum of c_j (1-z)^{j + e} terms around z = 1.

    ``dropped_analytic`` records that an integer-exponent strand (analytic at
    z = 1, so contributing nothing to coefficients with n > order) was
    discarded during construction.
    """

    base_exponent: Fraction
    terms: tuple  # ((j, c_j), ...) with j strictly increasing
    dropped_analytic: bool = False

    def __post_init__(self):
        if self.base_exponent not in PUISEUX_EXPONENTS:
            raise ValueError(f"unsupported Puiseux exponent {self.base_exponent}")

    @property
    def order(self) -> int:
        return self.terms[-1][0] if self.terms else -1

    def coefficient_of_zn(self, n: int) -> Fraction:
        """Truncated contribution of all terms to the z^n coefficient."""
        e = self.base_exponent
        total = Fraction(0)
        for j, c in self.terms:
            total += c * binom_rational(n - j - e - 1, n)
        return total


def puiseux_from_analytic(analytic: TruncatedSeries, exponent: Fraction) -> PuiseuxExpansion:
    """Attach (1-z)^exponent to every term of an analytic w-series."""
    terms = tuple((j, c) for j, c in enumerate(analytic.coeffs))
    return PuiseuxExpansion(Fraction(exponent), terms)


def central_puiseux(order: int) -> PuiseuxExpansion:
    """Puiseux data of 4/((4-z) sqrt(1-z)): c_j = (4/3)(-3)^{-j}, e = -1/2."""
    analytic = recenter_at_one([4], [4, -1], order)
    return puiseux_from_analytic(analytic, -HALF)


def catalan_puiseux(order: int) -> PuiseuxExpansion:
    """Puiseux data of 8(1 - sqrt(1-z))/(z(4-z)).

    The function splits into a_j (1-z)^j - a_j (1-z)^{j+1/2} with
    a_j = 2 + (2/3)(-3)^{-j}; the integer-exponent strand is analytic at
    z = 1 and is dropped (flagged), leaving coefficients -a_j at e = +1/2.
    """
    analytic = recenter_at_one([8], [0, 4, -1], order)
    terms = tuple((j, -c) for j, c in enumerate(analytic.coeffs))
    return PuiseuxExpansion(HALF, terms, dropped_analytic=True)


def darboux_coefficient(j: int, n: int) -> Fraction:
    """binom(n - j - 1/2, n): the z^n coefficient of (1-z)^{j-1/2}."""
    return binom_rational(Fraction(2 * (n - j) - 1, 2), n)


@dataclass(frozen=True)
class AsymExpansion:
    """prefactor * (gamma_0 + gamma_1/n + ... + gamma_m/n^m), all exact.

    The prefactor is constant * 4^{n+pow4_offset} * n^n_power / sqrt(pi n)
    (each factor per the corresponding field; pow4_offset None means no
    exponential factor).  ``error_exponent`` is the O-exponent of the defect
    after dividing out the 4^{n+pow4_offset} factor: dropping the error term
    changes the normalized value by O(n^-error_exponent).
    """

    constant: Fraction
    pow4_offset: int | None
    n_power: Fraction
    sqrt_pi_n: bool
    coeffs: tuple
    error_exponent: Fraction

    def __post_init__(self):
        if self.coeffs[0] != 1:
            raise ValueError("expansion not normalized: gamma_0 != 1")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def prefactor_str(self) -> str:
        parts = []
        if self.constant != 1:
            parts.append(str(self.constant))
        if self.pow4_offset is not None:
            off = self.pow4_offset
            parts.append(f"4^(n{off:+d})" if off else "4^n")
        if self.n_power:
            parts.append(f"n^({self.n_power})" if self.n_power.denominator > 1 or self.n_power < 0 else ("n" if self.n_power == 1 else f"n^{self.n_power}"))
        num = " * ".join(parts) if parts else "1"
        return f"{num} / sqrt(pi*n)" if self.sqrt_pi_n else num

    def to_json(self) -> dict:
        return {
            "constant": format_rational(self.constant),
            "pow4_offset": self.pow4_offset,
            "n_power": format_rational(self.n_power),
            "sqrt_pi_n": self.sqrt_pi_n,
            "coeffs": [format_rational(c) for c in self.coeffs],
            "error_exponent": format_rational(self.error_exponent),
        }


def _stirling_ratio_series(order: int) -> TruncatedSeries:
    # binom(2n,n) * sqrt(pi n) / 4^n = exp(R(2n) - 2 R(n)) where R is the
    # Stirling remainder sum_k B_2k / ((2k)(2k-1) n^{2k-1}); only odd powers
    # of 1/n survive in the argument.
    arg = [Fraction(0)] * (order + 1)
    k = 1
    while 2 * k - 1 <= order:
        arg[2 * k - 1] = (
            bernoulli(2 * k) * (Fraction(2) ** (1 - 2 * k) - 2) / ((2 * k) * (2 * k - 1))
        )
        k += 1
    return TruncatedSeries.of(arg, QQ, order).exp()


def stirling_central_binom_series(m: int) -> AsymExpansion:
    """Expansion of binom(2n,n): 4^n/sqrt(pi n) times a 1/n-series.

    Derived from Bernoulli data rather than imported, so the coefficient list
    [1, -1/8, 1/128, 5/1024, ...] is produced, not assumed.
    """
    return AsymExpansion(
        constant=Fraction(1),
        pow4_offset=0,
        n_power=Fraction(0),
        sqrt_pi_n=True,
        coeffs=_stirling_ratio_series(m).coeffs,
        error_exponent=m + Fraction(3, 2),
    )


def reciprocal_factor_series(denom_odd: int, order: int) -> TruncatedSeries:
    """1/(2n/d - 1) as the exact geometric series sum_{t>=1} (d/2)^t n^-t."""
    if denom_odd < 1 or denom_odd % 2 == 0:
        raise ValueError("denominator parameter must be a positive odd integer")
    cs = [Fraction(0)]
    val = Fraction(1)
    for _ in range(order):
        val *= Fraction(denom_odd, 2)
        cs.append(val)
    return TruncatedSeries.of(cs, QQ, order)


def theorem1_expansion(m: int) -> AsymExpansion:
    """Central partial sums: 4^{n+1}/(3 sqrt(pi n)) * (1 + 1/24n + ...)."""
    if m < 0:
        raise ValueError("order must be nonnegative")
    total = TruncatedSeries.one(QQ, m)
    prod = TruncatedSeries.one(QQ, m)
    for j in range(1, m + 1):
        prod = prod * reciprocal_factor_series(2 * j - 1, m)
        total = total + prod.scale(Fraction(1, 3**j))
    gammas = (_stirling_ratio_series(m) * total).coeffs
    return AsymExpansion(
        constant=Fraction(1, 3),
        pow4_offset=1,
        n_power=Fraction(0),
        sqrt_pi_n=True,
        coeffs=gammas,
        error_exponent=m + Fraction(3, 2),
    )


def theorem2_expansion(m: int) -> AsymExpansion:
    """Catalan partial sums: 4^{n+1}/(3 n sqrt(pi n)) * (1 - 5/8n + ...).

    The j-th product term starts at order n^{-(j-1)} relative to the leading
    2/n, so the sum runs to j = m+1 before truncating at order m.
    """
    if m < 0:
        raise ValueError("order must be nonnegative")
    work = m + 1
    total = TruncatedSeries.of([0], QQ, work)
    prod = TruncatedSeries.one(QQ, work)
    for j in range(m + 2):
        prod = prod * reciprocal_factor_series(2 * j + 1, work)
        total = total + prod.scale(3 * Fraction(-1) ** j + Fraction(1, 3**j))
    full = _stirling_ratio_series(work) * total
    # full = (2/n) * (gamma series); shift the index down and halve
    gammas = tuple(c / 2 for c in full.coeffs[1 : m + 2])
    return AsymExpansion(
        constant=Fraction(1, 3),
        pow4_offset=1,
        n_power=Fraction(-1),
        sqrt_pi_n=True,
        coeffs=gammas,
        error_exponent=m + Fraction(5, 2),
    )


def a002457_expansion(m: int) -> AsymExpansion:
    """Quarter-weighted partial sums (2n+1) binom(2n,n)/4^n: 2 sqrt(n/pi) * (...).

    (2n+1)/sqrt(pi n) * 4^{-n} * binom(2n,n) = 2 sqrt(n/pi) (1 + 1/(2n)) B(1/n),
    giving coefficients [1, 3/8, -7/128, 9/1024, ...].
    """
    if m < 0:
        raise ValueError("order must be nonnegative")
    shift = TruncatedSeries.of([1, HALF], QQ, m)
    gammas = (_stirling_ratio_series(m) * shift).coeffs
    return AsymExpansion(
        constant=Fraction(2),
        pow4_offset=None,
        n_power=Fraction(1),
        sqrt_pi_n=True,
        coeffs=gammas,
        error_exponent=m + HALF,
    )


REGIME_DOMINANT = 1
REGIME_INSIDE = 2
REGIME_BOUNDARY = 3
REGIME_QUARTER = 4

_REGIME_TEXT = {
    REGIME_DOMINANT: "|alpha| > 1/4: branch point z = 1 dominates; "
    "sum ~ (4a)^{n+1} / ((4a-1) sqrt(pi n))",
    REGIME_INSIDE: "|alpha| < 1/4: pole inside the disk dominates; "
    "sum -> 1/sqrt(1-4a)",
    REGIME_BOUNDARY: "|alpha| = 1/4, alpha != 1/4: two unit-modulus "
    "singularities; sum -> 1/sqrt(1-4a) with O(n^-1/2)",
    REGIME_QUARTER: "alpha = 1/4: sum equals (2n+1) binom(2n,n) / 4^n exactly",
}


@dataclass(frozen=True)
class WeightedRegime:
    """Case split and first-order formula for sum_k alpha^k binom(2k,k)."""

    regime: int
    alpha: RationalComplex
    error_exponent: Fraction | None

    @property
    def description(self) -> str:
        return _REGIME_TEXT[self.regime]

    def four_alpha(self) -> RationalComplex:
        return self.alpha * 4

    def radicand(self) -> RationalComplex:
        """1 - 4 alpha, the argument of the square root in the limit."""
        return RationalComplex(Fraction(1)) - self.alpha * 4

    def quarter_exact(self, n: int) -> Fraction:
        """Closed-form value (2n+1) binom(2n,n) / 4^n (regime 4 only)."""
        if self.regime != REGIME_QUARTER:
            raise ValueError("closed form only exists for alpha = 1/4")
        return Fraction((2 * n + 1) * binom(2 * n, n), 4**n)


def weighted_first_order(alpha) -> WeightedRegime:
    """Classify alpha against 1/4 (exactly) and return the regime data."""
    if not isinstance(alpha, RationalComplex):
        alpha = RationalComplex(Fraction(alpha))
    if alpha.re == 0 and alpha.im == 0:
        raise ValueError("alpha = 0 is degenerate: every partial sum is 1")
    size = alpha.abs_squared()
    sixteenth = Fraction(1, 16)
    if size > sixteenth:
        return WeightedRegime(REGIME_DOMINANT, alpha, Fraction(3, 2))
    if size < sixteenth:
        return WeightedRegime(REGIME_INSIDE, alpha, Fraction(1))
    if alpha.is_real() and alpha.re == Fraction(1, 4):
        return WeightedRegime(REGIME_QUARTER, alpha, None)
    return WeightedRegime(REGIME_BOUNDARY, alpha, HALF)
