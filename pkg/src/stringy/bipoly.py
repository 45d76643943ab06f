"""Sparse bivariate polynomials with integer coefficients.

A polynomial in u, v is a map from exponent pairs (p, q) to nonzero integer
coefficients.  This is the exact carrier for the signed Hodge-number
generating polynomials: the coefficient at (p, q) is (-1)^{p+q} h^{p,q},
so evaluation at (1, 1) is the Euler number.  No floating point anywhere.

The one nontrivial operation is :func:`exact_divide`: deciding whether a
bivariate polynomial is divisible by D(u*v) for a univariate D.  Division is
run in u over the field of rational functions in v (D(u*v) is not monic in
u, but its leading u-coefficient is a monomial in v, which is invertible
there), so the algorithm terminates without multivariate gcds; the candidate
quotient is accepted only if the remainder vanishes and every quotient
coefficient is an honest polynomial with integer coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional

from .errors import DomainError


class BiPoly:
    """Immutable sparse polynomial in two variables u, v over the integers."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean: dict[tuple[int, int], int] = {}
        if terms:
            for (p, q), coeff in terms.items():
                if not isinstance(coeff, int):
                    raise DomainError(f"coefficient at {(p, q)} is not an integer: {coeff!r}")
                if p < 0 or q < 0:
                    raise DomainError(f"negative exponent pair {(p, q)}")
                if coeff:
                    clean[(p, q)] = coeff
        self._terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls()

    @classmethod
    def constant(cls, value: int) -> "BiPoly":
        return cls({(0, 0): value})

    @classmethod
    def term(cls, coeff: int, p: int, q: int) -> "BiPoly":
        return cls({(p, q): coeff})

    @classmethod
    def from_t_polynomial(cls, coeffs: Iterable[int]) -> "BiPoly":
        """Build sum_k c_k (uv)^k from univariate coefficients in t = uv."""
        return cls({(k, k): int(c) for k, c in enumerate(coeffs) if c})

    # -- container protocol -------------------------------------------

    def coefficient(self, p: int, q: int) -> int:
        return self._terms.get((p, q), 0)

    def terms(self) -> Iterator[tuple[tuple[int, int], int]]:
        """Iterate (exponent pair, coefficient), lexicographically sorted."""
        return iter(sorted(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = BiPoly.constant(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    # -- ring operations ----------------------------------------------

    def __add__(self, other) -> "BiPoly":
        if isinstance(other, int):
            other = BiPoly.constant(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged.get(key, 0) + coeff
        return BiPoly(merged)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly({key: -coeff for key, coeff in self._terms.items()})

    def __sub__(self, other) -> "BiPoly":
        if isinstance(other, int):
            other = BiPoly.constant(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "BiPoly":
        return (-self) + other

    def __mul__(self, other) -> "BiPoly":
        if isinstance(other, int):
            if other == 0:
                return BiPoly.zero()
            return BiPoly({key: other * coeff for key, coeff in self._terms.items()})
        if not isinstance(other, BiPoly):
            return NotImplemented
        product: dict[tuple[int, int], int] = {}
        for (p1, q1), c1 in self._terms.items():
            for (p2, q2), c2 in other._terms.items():
                key = (p1 + p2, q1 + q2)
                product[key] = product.get(key, 0) + c1 * c2
        return BiPoly(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "BiPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise DomainError("polynomial powers must be nonnegative integers")
        result = BiPoly.constant(1)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- queries -------------------------------------------------------

    def evaluate(self, u0: Fraction | int, v0: Fraction | int) -> Fraction:
        """Exact value sum coeff * u0^p * v0^q."""
        u0 = Fraction(u0)
        v0 = Fraction(v0)
        total = Fraction(0)
        for (p, q), coeff in self._terms.items():
            total += coeff * u0**p * v0**q
        return total

    def degrees(self) -> tuple[int, int]:
        """(max u-exponent, max v-exponent); (-1, -1) for the zero polynomial."""
        if not self._terms:
            return (-1, -1)
        return (max(p for p, _ in self._terms), max(q for _, q in self._terms))

    def restrict_v1(self) -> tuple[int, ...]:
        """Coefficients of P(u, 1) as a dense tuple indexed by u-degree."""
        du = self.degrees()[0]
        if du < 0:
            return ()
        coeffs = [0] * (du + 1)
        for (p, _), coeff in self._terms.items():
            coeffs[p] += coeff
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)

    def swap_uv(self) -> "BiPoly":
        return BiPoly({(q, p): coeff for (p, q), coeff in self._terms.items()})

    def dual_symmetry_failure(self, dim: int) -> Optional[tuple[int, int]]:
        """First (p, q) violating coeff(p, q) == coeff(dim-p, dim-q), else None.

        This is Poincare duality on the signed coefficient array; the sign
        (-1)^{p+q} is the same at both paired positions, so it cancels.
        """
        for (p, q), coeff in sorted(self._terms.items()):
            if self.coefficient(dim - p, dim - q) != coeff:
                return (p, q)
        return None

    def is_dual_symmetric(self, dim: int) -> bool:
        return self.dual_symmetry_failure(dim) is None

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (p, q), coeff in self.terms():
            monomial = "".join(
                f"{var}^{e}" if e > 1 else var
                for var, e in (("u", p), ("v", q))
                if e
            )
            if monomial:
                head = {1: "", -1: "-"}.get(coeff, f"{coeff}*")
                parts.append(f"{head}{monomial}")
            else:
                parts.append(str(coeff))
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    __repr__ = __str__


def diagonal_slices(poly: BiPoly) -> dict[int, tuple[int, ...]]:
    """Decompose P along the grading deg u = 1, deg v = -1.

    Every monomial u^p v^q is w_m * t^k with m = p - q, k = min(p, q),
    t = uv and w_m = u^m (m >= 0) or v^{-m} (m < 0).  Multiplication by a
    polynomial in t alone preserves the slices, which makes this the natural
    coordinate system for witnessing non-divisibility by D(uv).
    """
    raw: dict[int, dict[int, int]] = {}
    for (p, q), coeff in poly.terms():
        raw.setdefault(p - q, {})[min(p, q)] = coeff
    slices = {}
    for m, col in raw.items():
        size = max(col) + 1
        dense = [0] * size
        for k, coeff in col.items():
            dense[k] = coeff
        slices[m] = tuple(dense)
    return slices


@dataclass(frozen=True)
class DivisionResult:
    """Outcome of :func:`exact_divide`.

    On failure, ``witness`` maps each diagonal slice m = p - q to the nonzero
    remainder of that slice's t-polynomial modulo the divisor; subtracting
    the witness from the numerator restores divisibility, so reports built
    from it are independently checkable.  The witness is empty in the one
    corner case where the quotient exists over the rationals but is not
    integral; ``reason`` then says so.
    """

    ok: bool
    quotient: Optional[BiPoly]
    witness: Optional[dict[int, tuple[Fraction, ...]]]
    reason: Optional[str] = None


def _slice_witness(numerator: BiPoly, divisor: tuple[int, ...]) -> dict[int, tuple[Fraction, ...]]:
    witness = {}
    dlist = [Fraction(c) for c in divisor]
    for m, coeffs in diagonal_slices(numerator).items():
        rem = [Fraction(c) for c in coeffs]
        # univariate long division of rem by dlist, keep only the remainder
        while len(rem) >= len(dlist):
            factor = rem[-1] / dlist[-1]
            shift = len(rem) - len(dlist)
            for i, d in enumerate(dlist):
                rem[shift + i] -= factor * d
            while rem and rem[-1] == 0:
                rem.pop()
        if rem:
            witness[m] = tuple(rem)
    return witness


def exact_divide(numerator: BiPoly, divisor: Iterable[int]) -> DivisionResult:
    """Divide ``numerator`` by D(uv), D given by integer coefficients in t.

    Returns the quotient Q with Q * D(uv) == numerator when the division is
    exact in the integer polynomial ring, otherwise a failure carrying the
    remainder witness.  Non-divisibility is a result, not an error.
    """
    dlist = [int(c) for c in divisor]
    while dlist and dlist[-1] == 0:
        dlist.pop()
    if not dlist:
        raise DomainError("division by the zero polynomial")
    a = len(dlist) - 1
    lead = dlist[-1]

    # columns: u-degree -> {v-degree (possibly negative): Fraction}
    work: dict[int, dict[int, Fraction]] = {}
    for (p, q), coeff in numerator.terms():
        work.setdefault(p, {})[q] = Fraction(coeff)
    quotient: dict[int, dict[int, Fraction]] = {}

    while work:
        p = max(work)
        if p < a:
            break
        m = p - a
        qcol = {q - a: c / lead for q, c in work[p].items()}
        quotient[m] = qcol
        for k, dk in enumerate(dlist):
            if not dk:
                continue
            target = work.setdefault(m + k, {})
            for q, c in qcol.items():
                new = target.get(q + k, Fraction(0)) - dk * c
                if new:
                    target[q + k] = new
                else:
                    target.pop(q + k, None)
            if not target:
                del work[m + k]

    if work:
        return DivisionResult(False, None, _slice_witness(numerator, tuple(dlist)),
                              "nonzero remainder")
    flat: dict[tuple[int, int], int] = {}
    for p, col in quotient.items():
        for q, c in col.items():
            if not c:
                continue
            if q < 0:
                return DivisionResult(False, None, _slice_witness(numerator, tuple(dlist)),
                                      "quotient has negative powers of v")
            if c.denominator != 1:
                return DivisionResult(False, None, {},
                                      "quotient is not integral")
            flat[(p, q)] = c.numerator
    return DivisionResult(True, BiPoly(flat), None)
