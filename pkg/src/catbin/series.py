"""Truncated formal power series over an exact coefficient field.

A series of order N is known exactly modulo x^{N+1}; its coefficients are a
dense list c_0..c_N.  Arithmetic results carry the minimum of the operand
orders (never silently more), so no operation ever claims precision it does
not have.  Two coefficient fields are supported: the rationals (stdlib
Fraction) and the prime field GF(p) (ints reduced into [0, p)).

Multiplication is the classical O(N^2) Cauchy product; every series in scope
stays well below the size where that matters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import binom_rational, is_prime


class RationalField:
    """The field of exact rationals; coefficients are Fraction."""

    def coerce(self, x):
        return Fraction(x)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def invert(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(x)

    def div_int(self, x, k):
        # exact division by a nonzero integer k
        return Fraction(x) / k

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """GF(p); coefficients are ints in [0, p)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def coerce(self, x):
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return x.numerator % self.p
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def invert(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in GF({self.p})")
        return pow(x, -1, self.p)

    def div_int(self, x, k):
        return x * self.invert(k % self.p) % self.p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 x + ... + c_N x^N, exact modulo x^{N+1}."""

    field: object
    coeffs: tuple

    @classmethod
    def of(cls, coeffs, field=QQ, order: int | None = None):
        """Build from any coefficient iterable, padding/truncating to order."""
        cs = [field.coerce(c) for c in coeffs]
        if order is not None:
            cs = cs[: order + 1] + [field.zero()] * (order + 1 - len(cs))
        if not cs:
            raise ValueError("series needs at least the constant coefficient")
        return cls(field, tuple(cs))

    @classmethod
    def one(cls, field=QQ, order: int = 0):
        return cls.of([1], field, order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int):
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return TruncatedSeries(self.field, self.coeffs[: order + 1])

    def _check_field(self, other):
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __add__(self, other):
        self._check_field(other)
        n = min(self.order, other.order)
        coerce = self.field.coerce
        return TruncatedSeries(
            self.field,
            tuple(coerce(a + b) for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])),
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        self._check_field(other)
        n = min(self.order, other.order)
        zero = self.field.zero()
        out = [zero] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == zero:
                continue
            for j in range(n + 1 - i):
                out[i + j] += a * other.coeffs[j]
        if isinstance(self.field, PrimeField):
            p = self.field.p
            out = [c % p for c in out]
        return TruncatedSeries(self.field, tuple(out))

    def scale(self, c) -> "TruncatedSeries":
        c = self.field.coerce(c)
        if isinstance(self.field, PrimeField):
            p = self.field.p
            return TruncatedSeries(self.field, tuple(a * c % p for a in self.coeffs))
        return TruncatedSeries(self.field, tuple(a * c for a in self.coeffs))

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse modulo x^{N+1}; needs c_0 != 0."""
        c0 = self.coeffs[0]
        if c0 == self.field.zero():
            raise ZeroDivisionError("series with zero constant term has no inverse")
        inv0 = self.field.invert(c0)
        n = self.order
        out = [inv0]
        for k in range(1, n + 1):
            s = self.field.zero()
            for j in range(1, k + 1):
                s += self.coeffs[j] * out[k - j]
            out.append(self.field.coerce(-s * inv0))
        return TruncatedSeries(self.field, tuple(out))

    def pow_int(self, e: int) -> "TruncatedSeries":
        """Integer power by squaring (negative e inverts first)."""
        if e < 0:
            return self.inverse().pow_int(-e)
        result = TruncatedSeries.one(self.field, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def pow_rational(self, r) -> "TruncatedSeries":
        """(1 + u)^r for rational r via the binomial series; needs c_0 = 1.

        Over a prime field only integer r is meaningful and the computation
        is delegated to pow_int.
        """
        if self.coeffs[0] != self.field.one():
            raise ValueError("pow_rational requires constant term 1")
        r = Fraction(r)
        if isinstance(self.field, PrimeField):
            if r.denominator != 1:
                raise ValueError(f"fractional exponent {r} has no meaning over {self.field!r}")
            return self.pow_int(r.numerator)
        if r.denominator == 1:
            return self.pow_int(r.numerator)
        n = self.order
        u = self - TruncatedSeries.one(self.field, n)
        result = TruncatedSeries.one(self.field, n)
        upow = TruncatedSeries.one(self.field, n)
        for k in range(1, n + 1):
            upow = upow * u
            result = result + upow.scale(binom_rational(r, k))
        return result

    def exp(self) -> "TruncatedSeries":
        """Formal exponential; needs c_0 = 0."""
        if self.coeffs[0] != self.field.zero():
            raise ValueError("exp requires zero constant term")
        n = self.order
        out = [self.field.one()]
        for k in range(1, n + 1):
            s = self.field.zero()
            for j in range(1, k + 1):
                s += j * self.coeffs[j] * out[k - j]
            out.append(self.field.div_int(s, k))
        return TruncatedSeries(self.field, tuple(out))

    def log(self) -> "TruncatedSeries":
        """Formal logarithm; needs c_0 = 1."""
        if self.coeffs[0] != self.field.one():
            raise ValueError("log requires constant term 1")
        n = self.order
        inv = self.inverse()
        # log(a) = integral of a'/a
        deriv = [(j + 1) * self.coeffs[j + 1] for j in range(n)]
        h = [self.field.zero()] * n
        for i, d in enumerate(deriv):
            for j in range(n - i):
                h[i + j] += d * inv.coeffs[j]
        out = [self.field.zero()]
        for k in range(1, n + 1):
            out.append(self.field.div_int(h[k - 1], k))
        return TruncatedSeries(self.field, tuple(out))

    def xd(self) -> "TruncatedSeries":
        """The operator x * d/dx: coefficient c_k becomes k * c_k."""
        cs = [self.field.coerce(k * c) for k, c in enumerate(self.coeffs)]
        return TruncatedSeries(self.field, tuple(cs))

    def div_x(self) -> "TruncatedSeries":
        """Divide by x (shift down); needs c_0 = 0, order drops by one."""
        if self.coeffs[0] != self.field.zero():
            raise ValueError("not divisible by x: nonzero constant term")
        if self.order == 0:
            raise ValueError("cannot divide an order-0 series by x")
        return TruncatedSeries(self.field, self.coeffs[1:])

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """Substitute inner (with zero constant term) for x."""
        self._check_field(inner)
        if inner.coeffs[0] != self.field.zero():
            raise ValueError("composition requires inner constant term 0")
        n = min(self.order, inner.order)
        result = TruncatedSeries.of([self.coeffs[0]], self.field, n)
        ipow = TruncatedSeries.one(self.field, n)
        for k in range(1, n + 1):
            ipow = ipow * inner
            result = result + ipow.scale(self.coeffs[k])
        return result

    def is_zero(self) -> bool:
        zero = self.field.zero()
        return all(c == zero for c in self.coeffs)

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if k == 0:
                parts.append(str(c))
            else:
                parts.append(f"{c}*x^{k}" if k > 1 else f"{c}*x")
        return " + ".join(parts) + f" (mod x^{self.order + 1})"

    def to_json(self) -> dict:
        return {
            "field": repr(self.field),
            "coefficients": [str(c) for c in self.coeffs],
            "order": self.order,
        }


def geometric(ratio, field=QQ, order: int = 0) -> TruncatedSeries:
    """1 + r x + r^2 x^2 + ... through the given order."""
    r = field.coerce(ratio)
    cs = [field.one()]
    for _ in range(order):
        cs.append(field.coerce(cs[-1] * r))
    return TruncatedSeries(field, tuple(cs))


def binomial_series(multiplier, exponent, field=QQ, order: int = 0) -> TruncatedSeries:
    """(1 + multiplier * x)^exponent through the given order."""
    base = TruncatedSeries.of([1, multiplier], field, order)
    if Fraction(exponent).denominator == 1:
        return base.pow_int(int(exponent))
    return base.pow_rational(exponent)
