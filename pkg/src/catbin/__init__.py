"""Partial sums of central binomial coefficients and Catalan numbers:
exact asymptotic expansions, high-precision verification, and mod-p
polynomial certificates."""

from .arith import (
    PrimePower,
    Rational,
    RationalComplex,
    bernoulli,
    binom,
    binom_rational,
    jacobi,
    legendre_q_mod3,
    lucas_binom_mod,
    prime_powers_below,
)
from .darboux import (
    AsymExpansion,
    PuiseuxExpansion,
    WeightedRegime,
    a002457_expansion,
    catalan_puiseux,
    central_puiseux,
    darboux_coefficient,
    recenter_at_one,
    reciprocal_factor_series,
    stirling_central_binom_series,
    theorem1_expansion,
    theorem2_expansion,
    weighted_first_order,
)
from .series import QQ, PrimeField, TruncatedSeries

__all__ = [
    "AsymExpansion",
    "PrimeField",
    "PrimePower",
    "PuiseuxExpansion",
    "QQ",
    "Rational",
    "RationalComplex",
    "TruncatedSeries",
    "WeightedRegime",
    "a002457_expansion",
    "bernoulli",
    "binom",
    "binom_rational",
    "catalan_puiseux",
    "central_puiseux",
    "darboux_coefficient",
    "jacobi",
    "legendre_q_mod3",
    "lucas_binom_mod",
    "prime_powers_below",
    "recenter_at_one",
    "reciprocal_factor_series",
    "stirling_central_binom_series",
    "theorem1_expansion",
    "theorem2_expansion",
    "weighted_first_order",
]

__version__ = "0.1.0"
