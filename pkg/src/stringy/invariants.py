"""Resolution data and the stringy invariants built from it.

A resolution datum describes rho: Y -> X for an n-dimensional projective
variety X with at worst log-terminal singularities: the irreducible
components D_1, ..., D_r of the exceptional locus (normal crossings), their
discrepancies a_i from K_Y = rho^* K_X + sum a_i D_i, and for every subset
J of {1..r} the stratum D_J = intersection of the D_j (D_empty = Y) with its
E-polynomial and the intersection numbers the checks consume.

The stringy E-function is

    E_st(u, v) = sum_J E(D_J; u, v) * prod_{j in J} f_{a_j}(uv),
    f_a(t) = (t - 1)/(t^{a+1} - 1) - 1,

the stringy Euler number is its limit at u = v = 1,

    e_st = sum_J e(D_J) * prod_{j in J} (-a_j/(a_j + 1)),

and the stringy version of the Chern number c_1 c_{n-1} pairs the pullback
of the anticanonical class of X with the Chern 1-cycles of the strata:

    c_st^{1,n-1} = sum_J (rho^* c_1(X) . c_{n-|J|-1}(D_J))
                   * prod_{j in J} (-a_j/(a_j + 1)).

Identity checks compare an exact series-engine evaluation of derivatives of
E_st(u, 1) at u = 1 against closed formulas in e_st and c_st^{1,n-1};
residuals are exactly zero on pass.  Three conventions used throughout:
the empty subset contributes Y itself, empty strata carry E = 0 so subset
iteration is total, and the c_{-1} pairing on 0-dimensional strata is 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Optional

from .bipoly import BiPoly, exact_divide
from .errors import (
    DomainError,
    IncompleteDataError,
    NotApplicableError,
    PoleError,
    UnsupportedPointError,
    ValidationError,
)
from .hodge import euler_number, restriction_derivative
from .lattice import LatticeFunction, lattice_restrict
from .rational import lcm_of_denominators
from .report import Report
from .series import DEFAULT_ORDER, SeriesAtOne, correction_series


@dataclass(frozen=True)
class DivisorInfo:
    """One irreducible exceptional component and its discrepancy."""

    index: int
    discrepancy: Fraction

    def __post_init__(self):
        object.__setattr__(self, "discrepancy", Fraction(self.discrepancy))

    @property
    def is_log_terminal(self) -> bool:
        return self.discrepancy > -1

    @property
    def is_gorenstein_canonical(self) -> bool:
        a = self.discrepancy
        return a.denominator == 1 and a >= 0


@dataclass(frozen=True)
class StratumData:
    """One stratum D_J with its E-polynomial and intersection numbers.

    ``c1_cd1`` is c_1(D_J) . c_{d-1}(D_J), ``pullback_c1_cd1`` is
    rho^* c_1(X) . c_{d-1}(D_J) (d = dim D_J), and ``normal_restrictions``
    maps a divisor index j to c_1(O_{D_J}(D_j)) . c_{d-1}(D_J).  A declared
    Euler number, when present, is cross-checked against E(1, 1).
    """

    subset: frozenset[int]
    e_poly: BiPoly
    dim: int
    euler: Optional[int] = None
    c1_cd1: Optional[Fraction] = None
    pullback_c1_cd1: Optional[Fraction] = None
    normal_restrictions: Optional[Mapping[int, Fraction]] = None

    def __post_init__(self):
        object.__setattr__(self, "subset", frozenset(self.subset))
        if self.c1_cd1 is not None:
            object.__setattr__(self, "c1_cd1", Fraction(self.c1_cd1))
        if self.pullback_c1_cd1 is not None:
            object.__setattr__(self, "pullback_c1_cd1", Fraction(self.pullback_c1_cd1))
        if self.normal_restrictions is not None:
            object.__setattr__(
                self,
                "normal_restrictions",
                MappingProxyType({int(j): Fraction(x)
                                  for j, x in self.normal_restrictions.items()}),
            )

    @property
    def is_empty(self) -> bool:
        return not self.e_poly

    def euler_from_e(self) -> int:
        return euler_number(self.e_poly)


def _subset_key(J: Iterable[int]) -> frozenset[int]:
    return frozenset(int(j) for j in J)


def _subset_label(J: frozenset[int]) -> str:
    return "{" + ",".join(str(j) for j in sorted(J)) + "}"


@dataclass(frozen=True)
class ResolutionData:
    """Complete desk description of a resolution rho: Y -> X."""

    dimension: int
    divisors: tuple[DivisorInfo, ...]
    strata: Mapping[frozenset[int], StratumData]

    def __post_init__(self):
        object.__setattr__(self, "divisors", tuple(self.divisors))
        object.__setattr__(self, "strata", MappingProxyType(dict(self.strata)))

    @classmethod
    def build(cls, dimension: int, divisors: Iterable[DivisorInfo],
              strata: Iterable[StratumData]) -> "ResolutionData":
        """Assemble a datum, filling every unmentioned subset with an empty
        stratum so subset iteration is total."""
        divisors = tuple(divisors)
        table = {_subset_key(s.subset): s for s in strata}
        ids = [d.index for d in divisors]
        for size in range(len(ids) + 1):
            for J in itertools.combinations(sorted(ids), size):
                key = _subset_key(J)
                if key not in table:
                    table[key] = StratumData(key, BiPoly.zero(), dimension - size)
        return cls(dimension, divisors, table)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(sorted(d.index for d in self.divisors))

    def discrepancy(self, j: int) -> Fraction:
        for d in self.divisors:
            if d.index == j:
                return d.discrepancy
        raise DomainError(f"no divisor with index {j}")

    @property
    def lattice_order(self) -> int:
        """lcm of the discrepancy denominators; the exponents a_j + 1 land on
        the lattice x = u^(1/L) exactly for this L."""
        return lcm_of_denominators(d.discrepancy for d in self.divisors)

    def subsets(self) -> Iterator[frozenset[int]]:
        for size in range(len(self.indices) + 1):
            for J in itertools.combinations(self.indices, size):
                yield _subset_key(J)

    def stratum(self, J: Iterable[int]) -> StratumData:
        return self.strata[_subset_key(J)]

    def nonempty_strata(self) -> Iterator[StratumData]:
        for J in self.subsets():
            s = self.strata.get(J)
            if s is not None and not s.is_empty:
                yield s

    def weight(self, J: Iterable[int]) -> Fraction:
        """prod_{j in J} (-a_j / (a_j + 1)), the limit of the correction
        factors at u = v = 1."""
        w = Fraction(1)
        for j in J:
            a = self.discrepancy(j)
            w *= -a / (a + 1)
        return w

    @property
    def is_gorenstein_canonical(self) -> bool:
        return all(d.is_gorenstein_canonical for d in self.divisors)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate(data: ResolutionData) -> list[str]:
    """Return all invariant violations of the datum; empty means valid.

    Structural rules: divisor indices 1..r, log-terminal discrepancies,
    every subset present with consistent dimension, emptiness monotone under
    inclusion, per-stratum degree bound and coefficient duality, declared
    Euler numbers matching E(1, 1), and no intersection numbers attached to
    empty or 0-dimensional strata where the conventions force them to be 0.
    The one deep rule: whenever a stratum declares c_1(D_J) . c_{d-1}(D_J),
    the smooth-case quadratic identity must hold between it and the
    stratum's own E-polynomial, because every identity proved here applies
    that relation to each stratum separately.
    """
    out: list[str] = []
    n = data.dimension
    ids = data.indices
    if list(ids) != list(range(1, len(ids) + 1)):
        out.append(f"divisor indices must be 1..r, got {list(ids)}")
    for d in data.divisors:
        if not d.is_log_terminal:
            out.append(
                f"log-terminal violation: divisor {d.index} has discrepancy "
                f"{d.discrepancy} <= -1")

    id_set = set(ids)
    expected = {_subset_key(J) for size in range(len(ids) + 1)
                for J in itertools.combinations(sorted(ids), size)}
    for key in sorted(expected - set(data.strata), key=sorted):
        out.append(f"missing stratum for J = {_subset_label(key)}")
    for key in sorted(set(data.strata) - expected, key=sorted):
        out.append(f"stratum for unknown subset J = {_subset_label(key)}")

    for J in data.subsets():
        s = data.strata.get(J)
        if s is None:
            continue
        label = _subset_label(J)
        d = n - len(J)
        if s.dim != d:
            out.append(f"dimension mismatch at J = {label}: declared {s.dim}, "
                       f"expected {d}")
        if s.is_empty:
            for name, value in (("c1_cd1", s.c1_cd1),
                                ("pullback_c1_cd1", s.pullback_c1_cd1)):
                if value:
                    out.append(f"nonzero {name} on empty stratum J = {label}")
            if s.normal_restrictions and any(s.normal_restrictions.values()):
                out.append(f"nonzero normal restriction on empty stratum J = {label}")
            continue
        if d < 0:
            out.append(f"nonempty stratum of negative dimension at J = {label}")
            continue
        du, dv = s.e_poly.degrees()
        if du > d or dv > d:
            out.append(f"E-polynomial degree exceeds dimension {d} at J = {label}")
        failure = s.e_poly.dual_symmetry_failure(d)
        if failure is not None:
            out.append(f"duality fails at J = {label}, (p, q) = {failure}")
        if s.euler is not None and s.euler != s.euler_from_e():
            out.append(f"Euler mismatch at J = {label}: declared {s.euler}, "
                       f"E(1,1) = {s.euler_from_e()}")
        if s.normal_restrictions:
            for j in s.normal_restrictions:
                if j not in id_set:
                    out.append(f"normal restriction for unknown divisor {j} "
                               f"at J = {label}")
        if d == 0:
            for name, value in (("c1_cd1", s.c1_cd1),
                                ("pullback_c1_cd1", s.pullback_c1_cd1)):
                if value:
                    out.append(f"{name} must be 0 on 0-dimensional stratum "
                               f"J = {label} (no 1-cycles on points)")
            if s.normal_restrictions and any(s.normal_restrictions.values()):
                out.append(f"normal restrictions must be 0 on 0-dimensional "
                           f"stratum J = {label} (no 1-cycles on points)")
        elif s.c1_cd1 is not None and failure is None:
            lhs = restriction_derivative(s.e_poly, 2)
            rhs = (Fraction(3 * d * d - 5 * d, 12) * s.euler_from_e()
                   + Fraction(1, 6) * s.c1_cd1)
            if lhs != rhs:
                out.append(
                    f"per-stratum Chern consistency fails at J = {label}: "
                    f"E''(1) = {lhs} but c_1.c_(d-1) = {s.c1_cd1} forces {rhs}")

    # emptiness is monotone: supersets of an empty stratum stay empty
    for J in data.subsets():
        s = data.strata.get(J)
        if s is None or not s.is_empty:
            continue
        for j in ids:
            if j in J:
                continue
            sup = data.strata.get(J | {j})
            if sup is not None and not sup.is_empty:
                out.append(f"empty stratum J = {_subset_label(J)} has nonempty "
                           f"superset J = {_subset_label(J | {j})}")
    return out


def _require_valid(data: ResolutionData):
    violations = validate(data)
    if violations:
        raise ValidationError(violations)


# ---------------------------------------------------------------------------
# the stringy function and its evaluations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StringyFunction:
    """Symbolic E_st as a sum of (stratum E-polynomial) x (correction
    factors in t = uv with exponents a_j + 1)."""

    dimension: int
    lattice_order: int
    terms: tuple[tuple[BiPoly, tuple[Fraction, ...]], ...]

    def evaluate(self, u0: Fraction | int, v0: Fraction | int) -> Fraction:
        """Exact value at a point where every (uv)^{a_j+1} is rational.

        The product u0*v0 must be an exact L-th power of a rational (the
        canonical root is taken: positive whenever u0*v0 > 0); points where
        a correction denominator vanishes are poles, and the limit
        conventions of the Euler-number path are deliberately not applied.
        """
        u0, v0 = Fraction(u0), Fraction(v0)
        t0 = u0 * v0
        root = _rational_nth_root(t0, self.lattice_order)
        total = Fraction(0)
        for e_poly, exponents in self.terms:
            part = e_poly.evaluate(u0, v0)
            for e in exponents:
                m = self.lattice_order * e
                power = root ** m.numerator
                if power == 1:
                    raise PoleError(
                        f"(u0*v0)^{e} = 1 at u0*v0 = {t0}: correction factor pole")
                part *= (t0 - 1) / (power - 1) - 1
            total += part
        return total

    def series_at_one(self, order: int = DEFAULT_ORDER) -> SeriesAtOne:
        """Exact expansion of E_st(u, 1) in eps = u - 1 via the per-factor
        correction series and truncated products."""
        total = SeriesAtOne.constant(0, order)
        for e_poly, exponents in self.terms:
            part = SeriesAtOne.from_u_polynomial(e_poly.restrict_v1(), order)
            for e in exponents:
                part = part * correction_series(e - 1, order)
            total = total + part
        return total


def stringy_function(data: ResolutionData) -> StringyFunction:
    """Assemble E_st from a validated datum, one term per nonempty stratum."""
    _require_valid(data)
    terms = []
    for s in data.nonempty_strata():
        exponents = tuple(sorted(data.discrepancy(j) + 1 for j in s.subset))
        terms.append((s.e_poly, exponents))
    return StringyFunction(data.dimension, data.lattice_order, tuple(terms))


def _integer_nth_root(value: int, n: int) -> Optional[int]:
    if value < 0:
        return None
    if value in (0, 1) or n == 1:
        return value
    root = round(value ** (1.0 / n))
    for candidate in (root - 1, root, root + 1):
        if candidate >= 0 and candidate**n == value:
            return candidate
    return None


def _rational_nth_root(t: Fraction, n: int) -> Fraction:
    """Canonical exact n-th root of a rational, or an error if none exists."""
    if n == 1:
        return t
    if t < 0 and n % 2 == 0:
        raise UnsupportedPointError(
            f"{t} has no rational {n}-th root (negative with even degree)")
    sign = -1 if t < 0 else 1
    num = _integer_nth_root(abs(t.numerator), n)
    den = _integer_nth_root(t.denominator, n)
    if num is None or den is None:
        raise UnsupportedPointError(f"{t} is not an exact {n}-th power of a rational")
    return Fraction(sign * num, den)


# ---------------------------------------------------------------------------
# closed-formula invariants
# ---------------------------------------------------------------------------

def stringy_euler(data: ResolutionData) -> Fraction:
    """e_st = sum_J e(D_J) prod_{j in J} (-a_j/(a_j+1)), exact."""
    _require_valid(data)
    return sum((Fraction(s.euler_from_e()) * data.weight(s.subset)
                for s in data.nonempty_strata()), Fraction(0))


def c_st_1_n1(data: ResolutionData) -> Fraction:
    """Stringy c_1 c_{n-1} from the declared pullback intersection numbers.

    Strata of dimension 0 carry no 1-cycles and are skipped; every other
    nonempty stratum must declare its pullback number.
    """
    _require_valid(data)
    total = Fraction(0)
    for s in data.nonempty_strata():
        if s.dim < 1:
            continue
        if s.pullback_c1_cd1 is None:
            raise IncompleteDataError(
                f"pullback_c1_cd1 missing on stratum J = {_subset_label(s.subset)}")
        total += s.pullback_c1_cd1 * data.weight(s.subset)
    return total


def restrict_v1(function: StringyFunction) -> LatticeFunction:
    """E_st(u, 1) as one reduced rational function of x = u^(1/L)."""
    return lattice_restrict(
        [(e_poly.restrict_v1(), exponents) for e_poly, exponents in function.terms],
        function.lattice_order,
    )


def derivative_at_one(function: StringyFunction, order: int) -> Fraction:
    """Exact d^order/du^order E_st(u, 1) at u = 1 through the series engine."""
    if order not in (1, 2):
        raise DomainError("only first and second derivatives are defined here")
    return function.series_at_one(max(order, DEFAULT_ORDER)).derivative_value(order)


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------

def check_first_derivative_identity(data: ResolutionData) -> Report:
    """d/du E_st(u,1)|_1 = (n/2) e_st, series engine vs closed formula."""
    function = stringy_function(data)
    lhs = derivative_at_one(function, 1)
    rhs = Fraction(data.dimension, 2) * stringy_euler(data)
    return Report("stringy_first_derivative", lhs, rhs)


def check_main_identity(data: ResolutionData) -> Report:
    """d^2/du^2 E_st(u,1)|_1 = ((3n^2-5n)/12) e_st + (1/6) c_st^{1,n-1}."""
    function = stringy_function(data)
    n = data.dimension
    lhs = derivative_at_one(function, 2)
    rhs = (Fraction(3 * n * n - 5 * n, 12) * stringy_euler(data)
           + Fraction(1, 6) * c_st_1_n1(data))
    return Report("stringy_main_identity", lhs, rhs)


def check_relat_div(data: ResolutionData) -> Report:
    """Aggregate relation between stratum Chern numbers and the pullbacks:

        sum_J c_1(D_J).c_{d-1}(D_J) w_J
            = c_st^{1,n-1} + sum_J (sum_{j in J} (a_j+1)) e(D_J) w_J,

    with w_J the product of the limit weights.  The c_{-1} pairings on
    0-dimensional strata drop out of the left side; the Euler-weighted sum
    on the right runs over every nonempty stratum.
    """
    _require_valid(data)
    lhs = Fraction(0)
    for s in data.nonempty_strata():
        if s.dim < 1:
            continue
        if s.c1_cd1 is None:
            raise IncompleteDataError(
                f"c1_cd1 missing on stratum J = {_subset_label(s.subset)}")
        lhs += s.c1_cd1 * data.weight(s.subset)
    correction = Fraction(0)
    for s in data.nonempty_strata():
        if not s.subset:
            continue
        factor = sum((data.discrepancy(j) + 1 for j in s.subset), Fraction(0))
        correction += factor * s.euler_from_e() * data.weight(s.subset)
    rhs = c_st_1_n1(data) + correction
    return Report("relative_divisor_relation", lhs, rhs)


def check_adjunction_recursion(data: ResolutionData) -> Report:
    """Divisor-by-divisor recursion between restriction numbers:

        nr_{J minus j}(j) - e(D_J) = nr_J(j)     for every j in J,

    where nr_K(j) = c_1(O_{D_K}(D_j)) . c_{dim-1}(D_K) and an empty D_J
    contributes 0 on both accounts.  Pairs lacking data are skipped and
    listed; the report's left side is the total absolute defect, so the
    verdict is pass exactly when every checked pair balances.
    """
    _require_valid(data)
    checked, skipped, failures = [], [], []
    defect = Fraction(0)
    for J in data.subsets():
        if not J:
            continue
        stratum = data.strata[J]
        for j in sorted(J):
            parent = data.strata[J - {j}]
            pair = f"(J = {_subset_label(J)}, j = {j})"
            if parent.is_empty:
                continue
            if parent.normal_restrictions is None or j not in parent.normal_restrictions:
                skipped.append(pair)
                continue
            lhs_pair = parent.normal_restrictions[j] - stratum.euler_from_e()
            if stratum.is_empty or stratum.dim == 0:
                # no 1-cycles on empty sets or points: the pairing is 0
                rhs_pair = Fraction(0)
            else:
                if stratum.normal_restrictions is None or j not in stratum.normal_restrictions:
                    skipped.append(pair)
                    continue
                rhs_pair = stratum.normal_restrictions[j]
            checked.append(pair)
            if lhs_pair != rhs_pair:
                failures.append(f"{pair}: {lhs_pair} != {rhs_pair}")
                defect += abs(lhs_pair - rhs_pair)
    return Report("adjunction_recursion", defect, Fraction(0),
                  {"checked": tuple(checked), "skipped": tuple(skipped),
                   "failures": tuple(failures)})


# ---------------------------------------------------------------------------
# stringy Hodge numbers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StringyHodgeResult:
    """Outcome of the polynomiality test for E_st.

    ``status`` is "table" or "not_a_polynomial".  When the table exists it
    maps (p, q) to h_st^{p,q} = (-1)^{p+q} a_{p,q} and ``violations`` lists
    any failures of the structural properties every honest table satisfies
    (unit corners, double symmetry, vanishing beyond the dimension).
    Otherwise ``witness`` carries the nonzero remainder slices.
    """

    status: str
    table: Optional[Mapping[tuple[int, int], int]] = None
    witness: Optional[Mapping[int, tuple[Fraction, ...]]] = None
    violations: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.table is not None:
            object.__setattr__(self, "table", MappingProxyType(dict(self.table)))
        if self.witness is not None:
            object.__setattr__(self, "witness", MappingProxyType(dict(self.witness)))

    @property
    def exists(self) -> bool:
        return self.status == "table"


def _geometric_sum(a: int) -> list[int]:
    """1 + t + ... + t^a."""
    return [1] * (a + 1)


def _int_poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _table_violations(table: Mapping[tuple[int, int], int], n: int) -> list[str]:
    out = []
    if table.get((0, 0), 0) != 1:
        out.append("h_st^{0,0} != 1")
    if table.get((n, n), 0) != 1:
        out.append("h_st^{n,n} != 1")
    for (p, q), h in sorted(table.items()):
        if h != table.get((q, p), 0):
            out.append(f"h_st symmetry fails at {(p, q)}")
        if h != table.get((n - p, n - q), 0):
            out.append(f"h_st duality fails at {(p, q)}")
        if (p > n or q > n) and h:
            out.append(f"h_st nonzero beyond dimension at {(p, q)}")
    return out


def stringy_hodge_numbers(data: ResolutionData) -> StringyHodgeResult:
    """Extract h_st^{p,q} when E_st is a polynomial.

    Requires Gorenstein canonical input (every discrepancy a nonnegative
    integer); then every correction factor is the rational function
    -(t + ... + t^a)/(1 + t + ... + t^a), the common denominator is
    D(t) = prod_j (1 + ... + t^{a_j}), and polynomiality of E_st is exactly
    divisibility of the assembled numerator by D(uv).  Non-divisibility is
    reported with the remainder witness, not raised.
    """
    _require_valid(data)
    offending = [d for d in data.divisors if not d.is_gorenstein_canonical]
    if offending:
        raise NotApplicableError(
            "stringy Hodge numbers need nonnegative integer discrepancies; "
            + ", ".join(f"divisor {d.index} has a = {d.discrepancy}" for d in offending))

    denominator = [1]
    full_g = {}
    for d in data.divisors:
        g = _geometric_sum(int(d.discrepancy))
        full_g[d.index] = g
        denominator = _int_poly_mul(denominator, g)

    numerator = BiPoly.zero()
    for s in data.nonempty_strata():
        part = s.e_poly
        for j in data.indices:
            g = full_g[j]
            if j in s.subset:
                # -(t + ... + t^a) = 1 - (1 + t + ... + t^a)
                h = [1 - g[0]] + [-c for c in g[1:]]
                part = part * BiPoly.from_t_polynomial(h)
            else:
                part = part * BiPoly.from_t_polynomial(g)
        numerator = numerator + part

    division = exact_divide(numerator, denominator)
    if not division.ok:
        return StringyHodgeResult("not_a_polynomial", witness=division.witness or {})
    table = {(p, q): (-1) ** (p + q) * coeff
             for (p, q), coeff in division.quotient.terms()}
    return StringyHodgeResult(
        "table", table=table,
        violations=tuple(_table_violations(table, data.dimension)))
