"""Truncated Taylor expansions at u = 1 over exact rationals.

``SeriesAtOne`` stores the coefficients c_0 .. c_k of
f(1 + eps) = c_0 + c_1 eps + ... + c_k eps^k, so the k-th derivative of f
at u = 1 is k! * c_k.  Truncation is closed under ring operations, and
everything is a Fraction, so limits and derivatives computed through these
series are exact.

The correction factor attached to an exceptional divisor of discrepancy a,

    f_a(u) = (u - 1) / (u^{a+1} - 1) - 1,

has a removable singularity at u = 1 for every a > -1.  Its expansion is
obtained by factoring u^{a+1} - 1 = (a+1) * eps * B(eps) with B built from
the generalized binomial series of (1 + eps)^{a+1} (rational exponent), and
then inverting B.  The three coefficients every identity check relies on:

    f_a(1)   = -a/(a+1)
    f_a'(1)  = -a/(2(a+1))
    f_a''(1) =  a(a+2)/(6(a+1))
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

from .errors import DomainError

#: One above the highest derivative the identity checks need.
DEFAULT_ORDER = 3


def generalized_binomial(alpha: Fraction, k: int) -> Fraction:
    """Binomial coefficient C(alpha, k) = alpha (alpha-1) ... (alpha-k+1) / k!
    for a rational upper argument."""
    if k < 0:
        raise DomainError("binomial index must be nonnegative")
    num = Fraction(1)
    for i in range(k):
        num *= alpha - i
    return num / factorial(k)


class SeriesAtOne:
    """Exact truncated power series in eps = u - 1."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Sequence[Fraction | int]):
        if not coefficients:
            raise DomainError("a series needs at least its constant term")
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in coefficients))

    def __setattr__(self, name, value):
        raise AttributeError("SeriesAtOne is immutable")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def constant(cls, value: Fraction | int, order: int = DEFAULT_ORDER) -> "SeriesAtOne":
        return cls((Fraction(value),) + (Fraction(0),) * order)

    @classmethod
    def from_u_polynomial(cls, coeffs: Iterable[Fraction | int],
                          order: int = DEFAULT_ORDER) -> "SeriesAtOne":
        """Expand p(u) = sum c_p u^p around u = 1: the eps^k coefficient is
        sum_p c_p C(p, k)."""
        out = [Fraction(0)] * (order + 1)
        for p, c in enumerate(coeffs):
            if not c:
                continue
            c = Fraction(c)
            for k in range(min(p, order) + 1):
                out[k] += c * generalized_binomial(Fraction(p), k)
        return cls(out)

    # -- ring operations (truncate to the smaller order) ----------------

    def _match(self, other: "SeriesAtOne") -> int:
        return min(self.order, other.order)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SeriesAtOne.constant(other, self.order)
        if not isinstance(other, SeriesAtOne):
            return NotImplemented
        k = self._match(other)
        return SeriesAtOne([self.coefficients[i] + other.coefficients[i] for i in range(k + 1)])

    __radd__ = __add__

    def __neg__(self):
        return SeriesAtOne([-c for c in self.coefficients])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SeriesAtOne.constant(other, self.order)
        if not isinstance(other, SeriesAtOne):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SeriesAtOne([c * Fraction(other) for c in self.coefficients])
        if not isinstance(other, SeriesAtOne):
            return NotImplemented
        k = self._match(other)
        out = [Fraction(0)] * (k + 1)
        for i, a in enumerate(self.coefficients[: k + 1]):
            if not a:
                continue
            for j, b in enumerate(other.coefficients[: k + 1 - i]):
                out[i + j] += a * b
        return SeriesAtOne(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SeriesAtOne) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def reciprocal(self) -> "SeriesAtOne":
        """Multiplicative inverse, defined when the constant term is nonzero."""
        b = self.coefficients
        if b[0] == 0:
            raise DomainError("series with zero constant term has no reciprocal")
        inv = [Fraction(1) / b[0]]
        for k in range(1, self.order + 1):
            acc = Fraction(0)
            for i in range(1, k + 1):
                acc += b[i] * inv[k - i] if i < len(b) else 0
            inv.append(-acc / b[0])
        return SeriesAtOne(inv)

    def compose(self, inner: "SeriesAtOne") -> "SeriesAtOne":
        """self(inner(delta)) for an inner series with zero constant term."""
        if inner.coefficients[0] != 0:
            raise DomainError("composition needs an inner series vanishing at 0")
        k = min(self.order, inner.order)
        inner = SeriesAtOne(inner.coefficients[: k + 1])
        result = SeriesAtOne.constant(self.coefficients[k], k)
        for i in range(k - 1, -1, -1):
            result = result * inner + self.coefficients[i]
        return result

    def coefficient(self, k: int) -> Fraction:
        if k > self.order:
            raise DomainError(f"series truncated at order {self.order}, asked for {k}")
        return self.coefficients[k]

    def derivative_value(self, k: int) -> Fraction:
        """k-th derivative at u = 1, i.e. k! * c_k."""
        return factorial(k) * self.coefficient(k)

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.coefficients) + "]"

    __repr__ = __str__


def correction_series(a: Fraction | int, order: int = DEFAULT_ORDER) -> SeriesAtOne:
    """Expansion of f_a(u) = (u-1)/(u^{a+1} - 1) - 1 at u = 1.

    Requires a > -1 (log-terminal range) and order >= 2, since the identity
    checks consume the value and two derivatives.
    """
    a = Fraction(a)
    if a <= -1:
        raise DomainError(f"discrepancy {a} is not log-terminal (need a > -1)")
    if order < 2:
        raise DomainError("correction series must carry at least two derivatives")
    alpha = a + 1
    # u^alpha - 1 = alpha * eps * B(eps), B(0) = 1
    b = SeriesAtOne([generalized_binomial(alpha, k + 1) / alpha for k in range(order + 1)])
    return b.reciprocal() * (Fraction(1) / alpha) - 1
