"""Univariate rational functions in x = u^(1/L).

Restricting the stringy function to v = 1 produces terms with fractional
powers u^{a+1}.  With L a common multiple of the exponent denominators and
x = u^(1/L), every such power becomes the honest monomial x^(L(a+1)), and
the whole restriction is one rational function of x.  Fractions are kept
fully reduced through the Euclidean algorithm over the rationals, so the
limit at u = 1 and both derivatives used by the identity checks come out
exact.  Evaluation at points that are not exact L-th powers is refused
rather than approximated.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, PoleError
from .series import SeriesAtOne, generalized_binomial

Coeffs = tuple[Fraction, ...]


def _strip(coeffs: Iterable[Fraction | int]) -> Coeffs:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Coeffs:
    size = max(len(a), len(b))
    return _strip([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                   for i in range(size)])


def poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> Coeffs:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _strip(out)


def poly_scale(a: Sequence[Fraction], s: Fraction) -> Coeffs:
    return _strip([c * s for c in a])


def poly_divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Coeffs, Coeffs]:
    b = _strip(b)
    if not b:
        raise DomainError("polynomial division by zero")
    rem = [Fraction(c) for c in _strip(a)]
    quot = [Fraction(0)] * max(len(rem) - len(b) + 1, 0)
    while len(rem) >= len(b):
        factor = rem[-1] / b[-1]
        shift = len(rem) - len(b)
        quot[shift] = factor
        for i, c in enumerate(b):
            rem[shift + i] -= factor * c
        while rem and rem[-1] == 0:
            rem.pop()
    return _strip(quot), _strip(rem)


def poly_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> Coeffs:
    """Monic greatest common divisor over the rationals."""
    a, b = _strip(a), _strip(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return ()
    return poly_scale(a, Fraction(1) / a[-1])


def poly_eval(a: Sequence[Fraction], x0: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(list(a)):
        total = total * x0 + c
    return total


def poly_taylor_at_one(a: Sequence[Fraction], order: int) -> SeriesAtOne:
    """Truncated expansion of the polynomial around x = 1."""
    out = [Fraction(0)] * (order + 1)
    for p, c in enumerate(a):
        if not c:
            continue
        for k in range(min(p, order) + 1):
            out[k] += c * generalized_binomial(Fraction(p), k)
    return SeriesAtOne(out)


class LatticeFunction:
    """Reduced fraction of polynomials in x = u^(1/L).

    Canonical form: numerator and denominator coprime, denominator monic.
    Arithmetic requires both operands to live on the same lattice.
    """

    __slots__ = ("L", "num", "den")

    def __init__(self, L: int, num: Iterable[Fraction | int],
                 den: Iterable[Fraction | int] = (1,)):
        if not isinstance(L, int) or L < 1:
            raise DomainError(f"lattice order must be a positive integer, got {L!r}")
        n, d = _strip(num), _strip(den)
        if not d:
            raise DomainError("zero denominator")
        if not n:
            n, d = (), (Fraction(1),)
        else:
            g = poly_gcd(n, d)
            if len(g) > 1:
                n = poly_divmod(n, g)[0]
                d = poly_divmod(d, g)[0]
            scale = Fraction(1) / d[-1]
            n = poly_scale(n, scale)
            d = poly_scale(d, scale)
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, name, value):
        raise AttributeError("LatticeFunction is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def constant(cls, value: Fraction | int, L: int = 1) -> "LatticeFunction":
        return cls(L, (Fraction(value),))

    @classmethod
    def _from_coprime(cls, L: int, num: Iterable[Fraction],
                      den: Iterable[Fraction]) -> "LatticeFunction":
        """Trusted constructor for pairs already known to be coprime, with a
        monic denominator; skips the Euclidean reduction."""
        instance = object.__new__(cls)
        n, d = _strip(num), _strip(den)
        if not n:
            n, d = (), (Fraction(1),)
        object.__setattr__(instance, "L", L)
        object.__setattr__(instance, "num", n)
        object.__setattr__(instance, "den", d)
        return instance

    @classmethod
    def from_u_polynomial(cls, coeffs: Iterable[Fraction | int], L: int) -> "LatticeFunction":
        """Embed p(u) as p(x^L)."""
        coeffs = list(coeffs)
        out = [Fraction(0)] * (max(len(coeffs) - 1, 0) * L + 1)
        for p, c in enumerate(coeffs):
            if c:
                out[p * L] = Fraction(c)
        return cls(L, out)

    @classmethod
    def correction_factor(cls, a: Fraction | int, L: int) -> "LatticeFunction":
        """The factor (u-1)/(u^{a+1} - 1) - 1 as a function of x = u^(1/L).

        With m = L(a+1), which must land on the lattice, this is
        (x^L - x^m)/(x^m - 1); for a = 0 the numerator cancels and the
        factor vanishes identically.
        """
        a = Fraction(a)
        if a <= -1:
            raise DomainError(f"discrepancy {a} is not log-terminal (need a > -1)")
        m_exact = L * (a + 1)
        if m_exact.denominator != 1:
            raise DomainError(f"lattice order {L} incompatible with exponent {a + 1}")
        m = m_exact.numerator
        num = [Fraction(0)] * (max(L, m) + 1)
        num[L] += 1
        num[m] -= 1
        den = [Fraction(0)] * (m + 1)
        den[m] = Fraction(1)
        den[0] = Fraction(-1)
        return cls(L, num, den)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "LatticeFunction"):
        if self.L != other.L:
            raise DomainError(f"lattice orders differ: {self.L} vs {other.L}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LatticeFunction.constant(other, self.L)
        if not isinstance(other, LatticeFunction):
            return NotImplemented
        self._check(other)
        num = poly_add(poly_mul(self.num, other.den), poly_mul(other.num, self.den))
        return LatticeFunction(self.L, num, poly_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return LatticeFunction(self.L, poly_scale(self.num, Fraction(-1)), self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LatticeFunction.constant(other, self.L)
        if not isinstance(other, LatticeFunction):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LatticeFunction(self.L, poly_scale(self.num, Fraction(other)), self.den)
        if not isinstance(other, LatticeFunction):
            return NotImplemented
        self._check(other)
        return LatticeFunction(self.L, poly_mul(self.num, other.num),
                               poly_mul(self.den, other.den))

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, LatticeFunction) and self.L == other.L
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.L, self.num, self.den))

    @property
    def is_polynomial(self) -> bool:
        return self.den == (Fraction(1),)

    # -- analysis ----------------------------------------------------------

    def evaluate(self, x0: Fraction | int) -> Fraction:
        x0 = Fraction(x0)
        d = poly_eval(self.den, x0)
        if d == 0:
            raise PoleError(f"pole at x = {x0}")
        return poly_eval(self.num, x0) / d

    def taylor_at_one(self, order: int) -> SeriesAtOne:
        """Expansion in delta = x - 1; a genuine pole at x = 1 is refused.

        The fraction is already reduced, so the denominator vanishing at 1
        means the function has no finite limit there.
        """
        den_series = poly_taylor_at_one(self.den, order)
        if den_series.coefficient(0) == 0:
            raise PoleError("pole at x = 1")
        return poly_taylor_at_one(self.num, order) * den_series.reciprocal()

    def limit_at_one(self) -> Fraction:
        return self.taylor_at_one(0).coefficient(0)

    def u_derivative_at_one(self, order: int) -> Fraction:
        """Derivative with respect to u at u = 1, undoing x = u^(1/L).

        With G(x) = F(x^L):  G'(1) = L F'(1)  and
        G''(1) = L^2 F''(1) + L(L-1) F'(1); only orders 0..2 are needed.
        """
        if order not in (0, 1, 2):
            raise DomainError("only derivatives of order 0, 1, 2 are supported")
        series = self.taylor_at_one(order)
        if order == 0:
            return series.coefficient(0)
        g1 = series.derivative_value(1)
        if order == 1:
            return g1 / self.L
        g2 = series.derivative_value(2)
        return (g2 - (self.L - 1) * g1) / Fraction(self.L**2)

    def __str__(self):
        def fmt(coeffs):
            if not coeffs:
                return "0"
            parts = []
            for p, c in enumerate(coeffs):
                if not c:
                    continue
                if p == 0:
                    parts.append(str(c))
                else:
                    mono = "x" if p == 1 else f"x^{p}"
                    head = {Fraction(1): "", Fraction(-1): "-"}.get(c, f"{c}*")
                    parts.append(f"{head}{mono}")
            return " + ".join(parts).replace("+ -", "- ")

        if self.is_polynomial:
            return f"({fmt(self.num)})  [x = u^(1/{self.L})]"
        return f"({fmt(self.num)}) / ({fmt(self.den)})  [x = u^(1/{self.L})]"

    __repr__ = __str__


# -- fast structured assembly for the stringy restriction -------------------
#
# The restriction is a sum of terms  p(x^L) * prod_e (x^L - x^{m_e})/(x^{m_e}-1)
# with m_e = L*e.  Generic fraction arithmetic with Euclidean reduction blows
# up here (denominators reach degree in the hundreds), but the denominator is
# a known product of x^m - 1 factors, whose irreducible factors are the
# cyclotomic polynomials of the divisors of m.  So the sum is assembled over
# the integer ring with one structured common denominator and reduced by
# trial division against exactly those cyclotomic factors; what survives is
# coprime to the numerator by construction.


def _int_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    while out and out[-1] == 0:
        out.pop()
    return out


def _int_divmod_monic(a: Sequence[int], b: Sequence[int]) -> tuple[list[int], list[int]]:
    rem = list(a)
    quot = [0] * max(len(rem) - len(b) + 1, 0)
    while len(rem) >= len(b):
        factor = rem[-1]
        shift = len(rem) - len(b)
        quot[shift] = factor
        for i, c in enumerate(b):
            rem[shift + i] -= factor * c
        while rem and rem[-1] == 0:
            rem.pop()
    return quot, rem


def _cyclotomic(d: int, cache: dict[int, list[int]]) -> list[int]:
    if d not in cache:
        poly = [-1] + [0] * (d - 1) + [1]  # x^d - 1
        for e in range(1, d):
            if d % e == 0:
                poly, rem = _int_divmod_monic(poly, _cyclotomic(e, cache))
                assert not rem
        cache[d] = poly
    return cache[d]


def _factor_exponent(e: Fraction, L: int) -> int:
    e = Fraction(e)
    if e <= 0:
        raise DomainError(f"correction exponent must be positive, got {e}")
    m = L * e
    if m.denominator != 1:
        raise DomainError(f"lattice order {L} incompatible with exponent {e}")
    return m.numerator


def lattice_restrict(terms: Iterable[tuple[Sequence[Fraction | int], Iterable[Fraction]]],
                     L: int) -> LatticeFunction:
    """Assemble sum_terms p(u) * prod_e f_{e-1}(u) as one reduced fraction.

    Each term is a pair (coefficients of a polynomial in u, iterable of
    exponents e = a + 1 of the correction factors attached to it).  Raises
    when L is inconsistent with some exponent.
    """
    parsed: list[tuple[list[int], list[int]]] = []
    denominators_needed: dict[int, int] = {}
    for coeffs, exponents in terms:
        ms = sorted(_factor_exponent(e, L) for e in exponents)
        ints = []
        for c in coeffs:
            c = Fraction(c)
            if c.denominator != 1:
                raise DomainError("stringy restriction expects integer "
                                  "polynomial coefficients")
            ints.append(c.numerator)
        parsed.append((ints, ms))
        counts: dict[int, int] = {}
        for m in ms:
            counts[m] = counts.get(m, 0) + 1
        for m, k in counts.items():
            denominators_needed[m] = max(denominators_needed.get(m, 0), k)

    common_den = [1]
    for m, k in sorted(denominators_needed.items()):
        factor = [-1] + [0] * (m - 1) + [1]
        for _ in range(k):
            common_den = _int_mul(common_den, factor)

    numerator: list[int] = []
    for ints, ms in parsed:
        part = [0] * ((len(ints) - 1) * L + 1) if ints else []
        for p, c in enumerate(ints):
            if c:
                part[p * L] = c
        counts = {}
        for m in ms:
            counts[m] = counts.get(m, 0) + 1
            top = [0] * (max(L, m) + 1)
            top[L] += 1
            top[m] -= 1
            part = _int_mul(part, top)
        for m, k in sorted(denominators_needed.items()):
            missing = k - counts.get(m, 0)
            factor = [-1] + [0] * (m - 1) + [1]
            for _ in range(missing):
                part = _int_mul(part, factor)
        size = max(len(numerator), len(part))
        numerator = [(numerator[i] if i < len(numerator) else 0)
                     + (part[i] if i < len(part) else 0) for i in range(size)]
    while numerator and numerator[-1] == 0:
        numerator.pop()

    if not numerator:
        return LatticeFunction(L, ())

    # reduce by the cyclotomic factors of the denominator
    cache: dict[int, list[int]] = {}
    multiplicity: dict[int, int] = {}
    for m, k in denominators_needed.items():
        for d in range(1, m + 1):
            if m % d == 0:
                multiplicity[d] = multiplicity.get(d, 0) + k
    den = common_den
    for d in sorted(multiplicity):
        phi = _cyclotomic(d, cache)
        for _ in range(multiplicity[d]):
            quot, rem = _int_divmod_monic(numerator, phi)
            if rem:
                break
            numerator = quot
            den, rem_d = _int_divmod_monic(den, phi)
            assert not rem_d

    return LatticeFunction._from_coprime(
        L, [Fraction(c) for c in numerator], [Fraction(c) for c in den])
