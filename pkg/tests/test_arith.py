"""Number-theoretic primitives against independent oracles."""

import math
import random
from fractions import Fraction

import pytest

from catbin.arith import (
    PrimePower,
    RationalComplex,
    bernoulli,
    binom,
    binom_rational,
    is_prime,
    jacobi,
    legendre_q_mod3,
    lucas_binom_mod,
    parse_rational,
    format_mod,
    format_rational,
    prime_powers_below,
)


def factorial_binom(n, k):
    # independent oracle: direct factorial evaluation
    if k > n:
        return 0
    return math.factorial(n) // (math.factorial(k) * math.factorial(n - k))


def falling_product_binom(a, k):
    # independent oracle for the generalized binomial
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(a) - i
    return out / math.factorial(k)


@pytest.mark.parametrize(
    "n, k, expected",
    [(0, 0, 1), (4, 2, 6), (16, 8, 12870), (5, 9, 0)],
)
def test_binom_frozen(n, k, expected):
    assert expected == factorial_binom(n, k)
    assert binom(n, k) == expected


def test_binom_matches_factorials():
    for n in range(30):
        for k in range(35):
            assert binom(n, k) == factorial_binom(n, k)


def test_binom_rejects_negative():
    with pytest.raises(ValueError):
        binom(-1, 0)


@pytest.mark.parametrize(
    "a, k, expected",
    [
        (Fraction(-1, 2), 1, Fraction(-1, 2)),
        (Fraction(-1, 2), 2, Fraction(3, 8)),
        (Fraction(3, 2), 2, Fraction(3, 8)),
        (Fraction(5), 2, Fraction(10)),
    ],
)
def test_binom_rational_frozen(a, k, expected):
    assert expected == falling_product_binom(a, k)
    assert binom_rational(a, k) == expected


def test_binom_rational_central_identity():
    # binom(n-1/2, n) * 4^n = binom(2n, n)
    for n in range(31):
        assert binom_rational(Fraction(2 * n - 1, 2), n) * 4**n == binom(2 * n, n)


def akiyama_tanigawa(n):
    # independent Bernoulli oracle (gives B_1 = +1/2; negate the n = 1 entry)
    row = [Fraction(1, m + 1) for m in range(n + 1)]
    for m in range(1, n + 1):
        for j in range(n + 1 - m):
            row[j] = (j + 1) * (row[j] - row[j + 1])
    return row[0]


def test_bernoulli_against_independent_recurrence():
    for k in range(20):
        expected = akiyama_tanigawa(k)
        if k == 1:
            expected = -expected
        assert bernoulli(k) == expected


def test_bernoulli_frozen():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)


def test_bernoulli_odd_vanish():
    assert all(bernoulli(k) == 0 for k in range(3, 30, 2))


def euler_criterion(a, p):
    # independent Legendre oracle for odd primes
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@pytest.mark.parametrize("a, n, expected", [(2, 3, -1), (1, 7, 1), (-3, 5, -1)])
def test_jacobi_frozen(a, n, expected):
    assert euler_criterion(a, n) == expected
    assert jacobi(a, n) == expected


def test_jacobi_matches_euler_criterion():
    primes = [p for p in range(3, 200) if is_prime(p)]
    for p in primes:
        for a in range(-10, 11):
            assert jacobi(a, p) == euler_criterion(a, p), (a, p)


def test_jacobi_rejects_bad_modulus():
    with pytest.raises(ValueError):
        jacobi(3, 4)
    with pytest.raises(ValueError):
        jacobi(3, -5)


@pytest.mark.parametrize("q, expected", [(7, 1), (5, -1), (9, 0), (2, -1), (4, 1)])
def test_legendre_q_mod3(q, expected):
    assert legendre_q_mod3(q) == expected


def test_minus3_power_fact():
    # (-3)^{(p-1)/2} = (p|3) in GF(p) for every odd prime p in (3, 1000)
    for p in range(5, 1000, 2):
        if not is_prime(p):
            continue
        assert jacobi(-3, p) == legendre_q_mod3(p)


@pytest.mark.parametrize("n, k, p, expected", [(7, 3, 5, 0), (4, 2, 7, 6)])
def test_lucas_frozen(n, k, p, expected):
    assert factorial_binom(n, k) % p == expected
    assert lucas_binom_mod(n, k, p) == expected


def test_lucas_k_zero():
    assert all(lucas_binom_mod(n, 0, p) == 1 for n in (0, 5, 100) for p in (2, 13))


def test_lucas_matches_exact():
    for p in (2, 3, 5, 7, 11, 13):
        for n in range(65):
            for k in range(n + 1):
                assert lucas_binom_mod(n, k, p) == binom(n, k) % p


def test_rational_field_axioms():
    rng = random.Random(20240811)

    def rand():
        return Fraction(rng.randint(-50, 50), rng.randint(1, 30))

    for _ in range(200):
        a, b, c = rand(), rand(), rand()
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_prime_power_construction():
    pp = PrimePower.from_q(9)
    assert (pp.p, pp.e, pp.q) == (3, 2, 9)
    assert PrimePower.from_q(1024) == PrimePower(2, 10, 1024)
    assert PrimePower.from_q(97).e == 1


@pytest.mark.parametrize("q", [1, 12, 100, 1998])
def test_prime_power_rejects_composites(q):
    with pytest.raises(ValueError):
        PrimePower.from_q(q)


def test_prime_power_mismatch_rejected():
    with pytest.raises(ValueError):
        PrimePower(3, 2, 8)
    with pytest.raises(ValueError):
        PrimePower(4, 1, 4)


def trial_division_prime_powers(limit):
    out = []
    for q in range(2, limit):
        m, p = q, None
        for f in range(2, q + 1):
            if m % f == 0:
                p = f
                break
        while m % p == 0:
            m //= p
        if m == 1:
            out.append(q)
    return out


def test_prime_powers_below_matches_trial_division():
    assert [pp.q for pp in prime_powers_below(300)] == trial_division_prime_powers(300)


def test_is_prime_spot_values():
    assert is_prime(2) and is_prime(1999) and is_prime(2**31 - 1)
    assert not is_prime(1) and not is_prime(561) and not is_prime(2047)


def test_serialization_forms():
    assert format_mod(12, 7) == "5 mod 7"
    assert format_rational(Fraction(59, 384)) == "59/384"
    assert format_rational(Fraction(1)) == "1/1"
    assert parse_rational("2425/9216") == Fraction(2425, 9216)
    assert parse_rational("-5") == Fraction(-5)


def test_rational_complex_arithmetic():
    a = RationalComplex(Fraction(1, 2), Fraction(1, 3))
    b = RationalComplex(Fraction(-1, 4), Fraction(2))
    assert (a * b).re == Fraction(-1, 8) - Fraction(2, 3)
    assert (a * b).im == 1 - Fraction(1, 12)
    assert a.abs_squared() == Fraction(1, 4) + Fraction(1, 9)
    assert (a - b).im == Fraction(1, 3) - 2
    assert str(RationalComplex(Fraction(0), Fraction(1, 4))) == "0+1/4i"
