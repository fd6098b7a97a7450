"""Exact integer/rational arithmetic and number-theoretic primitives.

Everything here is pure and exact: binomial coefficients (including the
generalized binom(a, k) for rational a), Bernoulli numbers, Jacobi symbols,
Lucas-style binomial reduction mod p, and prime-power bookkeeping.  All other
modules build on these.

Prime-field elements are represented as plain ints reduced into [0, p);
``format_mod`` renders the canonical "v mod p" form.  Rationals are stdlib
``fractions.Fraction`` (always lowest terms, positive denominator), rendered
canonically by ``format_rational``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

# Witnesses proving Miller-Rabin deterministic for all n < 3.3 * 10^24,
# which covers the supported modulus range (q < 2^64) with room to spare.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient; 0 when k > n."""
    if n < 0 or k < 0:
        raise ValueError("binom requires nonnegative arguments")
    return math.comb(n, k)


def binom_rational(a: Fraction, k: int) -> Fraction:
    """Generalized binomial a(a-1)...(a-k+1)/k! for rational (or integer) a."""
    if k < 0:
        raise ValueError("binom_rational requires k >= 0")
    a = Fraction(a)
    num = Fraction(1)
    for i in range(k):
        num *= a - i
    return num / math.factorial(k)


_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli(k: int) -> Fraction:
    """k-th Bernoulli number, convention B_1 = -1/2.

    Computed from the defining recurrence sum_{j<=m} binom(m+1, j) B_j = 0.
    """
    if k < 0:
        raise ValueError("bernoulli requires k >= 0")
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= k:
            m = len(_bernoulli_cache)
            s = sum(math.comb(m + 1, j) * _bernoulli_cache[j] for j in range(m))
            _bernoulli_cache.append(-s / (m + 1))
        return _bernoulli_cache[k]


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd positive n, via quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("jacobi symbol requires odd positive n")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for the supported range (n < 2^64)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimePower:
    """A modulus q = p^e with p prime and e >= 1."""

    p: int
    e: int
    q: int

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("exponent must be positive")
        if self.p ** self.e != self.q:
            raise ValueError(f"{self.q} != {self.p}^{self.e}")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def from_q(cls, q: int) -> "PrimePower":
        """Factor q as p^e, rejecting anything that is not a prime power."""
        if q < 2:
            raise ValueError(f"{q} is not a prime power")
        if is_prime(q):
            return cls(q, 1, q)
        for e in range(2, q.bit_length() + 1):
            r = _integer_root(q, e)
            if r**e == q and is_prime(r):
                return cls(r, e, q)
        raise ValueError(f"{q} is not a prime power")

    def __str__(self):
        return str(self.q) if self.e == 1 else f"{self.p}^{self.e}"


def _integer_root(n: int, k: int) -> int:
    """Largest x with x^k <= n (float seed, then exact adjustment)."""
    x = int(round(n ** (1.0 / k)))
    while x > 1 and x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def prime_powers_below(limit: int) -> list[PrimePower]:
    """All prime powers q = p^e < limit, ascending in q."""
    out = []
    for q in range(2, limit):
        try:
            out.append(PrimePower.from_q(q))
        except ValueError:
            continue
    return out


def legendre_q_mod3(q: PrimePower | int) -> int:
    """The Legendre symbol (q|3): 0 if 3 | q, else +1 / -1 as q = 1 / 2 mod 3."""
    qv = q.q if isinstance(q, PrimePower) else q
    r = qv % 3
    return 0 if r == 0 else (1 if r == 1 else -1)


def _fact_tables_mod(p: int) -> tuple[list[int], list[int]]:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    fact = [1] * p
    for i in range(1, p):
        fact[i] = fact[i - 1] * i % p
    inv_fact = [1] * p
    inv_fact[p - 1] = pow(fact[p - 1], -1, p) if p > 1 else 1
    for i in range(p - 1, 0, -1):
        inv_fact[i - 1] = inv_fact[i] * i % p
    return fact, inv_fact


_fact_cache: dict[int, tuple[list[int], list[int]]] = {}
_fact_lock = threading.Lock()


def _tables(p: int) -> tuple[list[int], list[int]]:
    try:
        return _fact_cache[p]
    except KeyError:
        with _fact_lock:
            if p not in _fact_cache:
                _fact_cache[p] = _fact_tables_mod(p)
            return _fact_cache[p]


def lucas_binom_mod(n: int, k: int, p: int) -> int:
    """binom(n, k) mod p via digit-wise base-p binomials (Lucas' theorem)."""
    if n < 0 or k < 0:
        raise ValueError("lucas_binom_mod requires nonnegative n, k")
    fact, inv_fact = _tables(p)
    result = 1
    while k or n:
        n, nd = divmod(n, p)
        k, kd = divmod(k, p)
        if kd > nd:
            return 0
        result = result * fact[nd] % p * inv_fact[kd] % p * inv_fact[nd - kd] % p
    return result


def format_mod(v: int, p: int) -> str:
    return f"{v % p} mod {p}"


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    """Parse "a/b" or plain integer strings."""
    return Fraction(s.strip())


@dataclass(frozen=True)
class RationalComplex:
    """Complex number with exact rational real and imaginary parts.

    Used where classification must be exact (|alpha| against 1/4) and where
    weighted sums are evaluated without rounding.
    """

    re: Fraction
    im: Fraction = Fraction(0)

    def __add__(self, other):
        other = _as_rational_complex(other)
        return RationalComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __mul__(self, other):
        other = _as_rational_complex(other)
        return RationalComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __sub__(self, other):
        other = _as_rational_complex(other)
        return RationalComplex(self.re - other.re, self.im - other.im)

    def abs_squared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        return f"{self.re}{'+' if self.im >= 0 else ''}{self.im}i"


def _as_rational_complex(x) -> RationalComplex:
    if isinstance(x, RationalComplex):
        return x
    return RationalComplex(Fraction(x))
