"""Built-in worked examples with exact expected values, and a generator of
internally consistent random resolution data for property tests.

Every expected value in a built-in entry carries a provenance note recording
how it was derived: direct evaluation of the defining sums, a hand
computation with the correction factors, or reduction to the smooth case.
Nothing is copied from tables without a derivation path.

The generator manufactures data that satisfies, by construction, everything
the identity checks assume: stratum E-polynomials are products of
dual-symmetric atoms, the stratum Chern numbers c_1 . c_{d-1} are defined
from the E-polynomials through the quadratic-moment identity, the
restriction numbers obey the divisor recursion, and the last free pullback
number is solved from the aggregate relation so that the second-derivative
identity holds exactly.  Sampling and rejecting would almost never accept;
solving always does.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .bipoly import BiPoly
from .errors import DomainError
from .hodge import HodgeDiamond, e_polynomial, euler_number, weighted_sum
from .invariants import DivisorInfo, ResolutionData, StratumData

BUILTIN_NAMES = (
    "point", "p1", "p2", "p3", "k3", "abelian_surface", "quintic",
    "sextic_cy4", "wp112", "wp113", "blowup_p2_point",
)


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    data: ResolutionData
    expected: Mapping[str, object]
    provenance: Mapping[str, str]


def _smooth_entry(name: str, diamond: HodgeDiamond, c1_cn1: Fraction | None,
                  notes: dict[str, str]) -> GalleryEntry:
    e_poly = e_polynomial(diamond)
    n = diamond.n
    number = None if n == 0 else Fraction(c1_cn1)
    stratum = StratumData(
        frozenset(), e_poly, n, euler=euler_number(e_poly),
        c1_cd1=number, pullback_c1_cd1=number)
    data = ResolutionData.build(n, (), [stratum])
    expected = {
        "e_st": Fraction(euler_number(e_poly)),
        "c_st_1_n1": Fraction(0) if number is None else number,
        "stringy_hodge": dict(diamond.entries),
    }
    return GalleryEntry(name, data, expected, notes)


def _projective_space(n: int) -> HodgeDiamond:
    return HodgeDiamond(n, {(p, p): 1 for p in range(n + 1)})


def _hirzebruch_like_datum(discrepancy: Fraction, pullback_top: Fraction,
                           nr_on_surface: Fraction,
                           nr_on_curve: Fraction) -> ResolutionData:
    """Surface datum: a rational ruled surface with one exceptional section.

    The total space has Hodge numbers 1, 2, 1 on the diagonal (so Euler
    number 4 and c_1^2 = 8); the exceptional curve is rational.
    """
    surface = BiPoly({(0, 0): 1, (1, 1): 2, (2, 2): 1})
    curve = BiPoly({(0, 0): 1, (1, 1): 1})
    return ResolutionData.build(
        2,
        [DivisorInfo(1, Fraction(discrepancy))],
        [
            StratumData(frozenset(), surface, 2, euler=4,
                        c1_cd1=Fraction(8), pullback_c1_cd1=Fraction(pullback_top),
                        normal_restrictions={1: Fraction(nr_on_surface)}),
            StratumData(frozenset({1}), curve, 1, euler=2,
                        c1_cd1=Fraction(2), pullback_c1_cd1=Fraction(0),
                        normal_restrictions={1: Fraction(nr_on_curve)}),
        ],
    )


def builtin(name: str) -> GalleryEntry:
    """Construct a built-in entry by name; see BUILTIN_NAMES."""
    if name == "point":
        return _smooth_entry(
            "point", HodgeDiamond(0, {(0, 0): 1}), None,
            {"e_st": "a point has Euler number 1; the empty product of "
                     "correction factors is 1",
             "c_st_1_n1": "no 1-cycles in dimension 0",
             "stringy_hodge": "E_st = 1"})
    if name == "p1":
        return _smooth_entry(
            "p1", _projective_space(1), Fraction(2),
            {"e_st": "rational curve: 1 + 1",
             "c_st_1_n1": "degree of the anticanonical class on a conic-free "
                          "rational curve: 2",
             "stringy_hodge": "smooth case: the usual Hodge numbers"})
    if name == "p2":
        return _smooth_entry(
            "p2", _projective_space(2), Fraction(9),
            {"e_st": "three diagonal classes",
             "c_st_1_n1": "c_1^2 of the plane = 9",
             "stringy_hodge": "smooth case"})
    if name == "p3":
        return _smooth_entry(
            "p3", _projective_space(3), Fraction(24),
            {"e_st": "four diagonal classes",
             "c_st_1_n1": "c_1 c_2 = 24 for 3-dimensional projective space",
             "stringy_hodge": "smooth case"})
    if name == "k3":
        diamond = HodgeDiamond(2, {(0, 0): 1, (2, 0): 1, (0, 2): 1,
                                   (1, 1): 20, (2, 2): 1})
        return _smooth_entry(
            "k3", diamond, Fraction(0),
            {"e_st": "1 + 1 + 20 + 1 + 1 = 24",
             "c_st_1_n1": "trivial canonical class",
             "stringy_hodge": "smooth case"})
    if name == "abelian_surface":
        diamond = HodgeDiamond(2, {(p, q): _binom2(p) * _binom2(q)
                                   for p in range(3) for q in range(3)})
        return _smooth_entry(
            "abelian_surface", diamond, Fraction(0),
            {"e_st": "(1 - 1)^2 * (1 - 1)^2 = 0 by the product structure",
             "c_st_1_n1": "trivial canonical class",
             "stringy_hodge": "smooth case: h^{p,q} = C(2,p) C(2,q)"})
    if name == "quintic":
        diamond = HodgeDiamond(3, {(0, 0): 1, (3, 3): 1, (3, 0): 1, (0, 3): 1,
                                   (1, 1): 1, (2, 2): 1, (2, 1): 101, (1, 2): 101})
        return _smooth_entry(
            "quintic", diamond, Fraction(0),
            {"e_st": "2(1 + 1) - 2(1 + 101) + ... = -200, the alternating sum",
             "c_st_1_n1": "trivial canonical class",
             "stringy_hodge": "smooth case"})
    if name == "sextic_cy4":
        diamond = HodgeDiamond(4, {(0, 0): 1, (4, 4): 1, (4, 0): 1, (0, 4): 1,
                                   (1, 1): 1, (3, 3): 1, (3, 1): 426, (1, 3): 426,
                                   (2, 2): 1752})
        return _smooth_entry(
            "sextic_cy4", diamond, Fraction(0),
            {"e_st": "brute-force alternating sum over the diamond: 2610",
             "c_st_1_n1": "trivial canonical class",
             "stringy_hodge": "smooth case"})
    if name == "wp112":
        # quadric cone surface; crepant resolution by a ruled surface with a
        # (-2)-section: a = 0, anticanonical degree 8 upstairs and on the base
        data = _hirzebruch_like_datum(Fraction(0), Fraction(8),
                                      Fraction(0), Fraction(-2))
        return GalleryEntry(
            "wp112", data,
            {"e_st": Fraction(4),
             "c_st_1_n1": Fraction(8),
             "stringy_hodge": {(0, 0): 1, (1, 1): 2, (2, 2): 1}},
            {"e_st": "a = 0 kills the correction term: e_st = e(Y) = 4",
             "c_st_1_n1": "a = 0 makes the pullback of c_1(X) equal c_1(Y), "
                          "so the top term is c_1(Y)^2 = 8; the curve term "
                          "carries weight 0",
             "stringy_hodge": "E_st = E(Y), diagonal 1, 2, 1"})
    if name == "wp113":
        # one-third discrepancy: resolution by the ruled surface with a
        # (-3)-section; pullback number (1+1+3)^2/3 = 25/3 on the top stratum
        data = _hirzebruch_like_datum(Fraction(-1, 3), Fraction(25, 3),
                                      Fraction(-1), Fraction(-3))
        return GalleryEntry(
            "wp113", data,
            {"e_st": Fraction(5),
             "c_st_1_n1": Fraction(25, 3),
             "stringy_hodge": "not_applicable"},
            {"e_st": "4 + 2 * ((1/3)/(2/3)) = 5, hand evaluation of the "
                     "defining sum",
             "c_st_1_n1": "25/3 + 0 * (1/2): the contracted curve pairs to 0 "
                          "with any pullback class",
             "stringy_hodge": "discrepancy -1/3 is not a nonnegative integer"})
    if name == "blowup_p2_point":
        # blow-up of a point on the plane, exceptional line with a = 1;
        # resolution invariants must reproduce the plane itself
        data = _hirzebruch_like_datum(Fraction(1), Fraction(9),
                                      Fraction(1), Fraction(-1))
        return GalleryEntry(
            "blowup_p2_point", data,
            {"e_st": Fraction(3),
             "c_st_1_n1": Fraction(9),
             "stringy_hodge": {(0, 0): 1, (1, 1): 1, (2, 2): 1}},
            {"e_st": "(3 + 1) + 2 * (-1/2) = 3, matching the plane",
             "c_st_1_n1": "9 + 0 * (-1/2) = 9 = c_1^2 of the plane",
             "stringy_hodge": "E(Y) - uv E(exceptional line) telescopes to "
                              "the diagonal 1, 1, 1"})
    raise DomainError(f"unknown gallery entry {name!r}; "
                      f"known names: {', '.join(BUILTIN_NAMES)}")


def _binom2(k: int) -> int:
    return (1, 2, 1)[k] if 0 <= k <= 2 else 0


# ---------------------------------------------------------------------------
# random consistent data
# ---------------------------------------------------------------------------

def _dual_atom(rng: random.Random, dim: int) -> BiPoly:
    """A dual-symmetric, u<->v-symmetric atom of the given dimension with
    constant term 1."""
    if dim == 0:
        return BiPoly.constant(1)
    kind = rng.random()
    if dim == 1 and kind < 0.5:
        g = rng.randint(0, 3)
        return BiPoly({(0, 0): 1, (1, 0): -g, (0, 1): -g, (1, 1): 1})
    if dim == 2 and kind < 0.4:
        off = rng.randint(0, 2)
        mid = rng.randint(-2, 22)
        return BiPoly({(0, 0): 1, (2, 0): off, (0, 2): off,
                       (1, 1): mid, (2, 2): 1})
    # palindromic diagonal polynomial
    half = [rng.randint(-3, 9) for _ in range((dim - 1) // 2)]
    middle = [rng.randint(-3, 9)] if dim % 2 == 0 else []
    coeffs = [1] + half + middle + half[::-1] + [1] if dim >= 2 else [1, 1]
    return BiPoly.from_t_polynomial(coeffs[: dim + 1])


def _dual_product(rng: random.Random, dim: int) -> BiPoly:
    poly = BiPoly.constant(1)
    remaining = dim
    while remaining > 0:
        k = rng.randint(1, remaining)
        poly = poly * _dual_atom(rng, k)
        remaining -= k
    return poly


def random_consistent(seed: int, n: int, r: int,
                      max_denominator: int = 6) -> ResolutionData:
    """Deterministically generate a datum on which every check passes.

    Discrepancies are rationals in (-1, 4] with denominators bounded by
    ``max_denominator`` (integers are drawn with positive probability so the
    Gorenstein extraction path gets exercised).  Emptiness of strata is
    monotone by construction and capped at |J| <= n.
    """
    if n < 1 or r < 0:
        raise DomainError("need dimension >= 1 and a nonnegative divisor count")
    rng = random.Random(1_000_003 * seed + 8191 * n + 131 * r + max_denominator)

    divisors = []
    for i in range(1, r + 1):
        if rng.random() < 0.35:
            a = Fraction(rng.randint(0, 3))
        else:
            q = rng.randint(1, max_denominator)
            a = Fraction(rng.randint(-q + 1, 4 * q), q)
        divisors.append(DivisorInfo(i, a))
    ids = list(range(1, r + 1))

    # monotone family of nonempty subsets
    nonempty = {frozenset()}
    for size in range(1, r + 1):
        for J in map(frozenset, itertools.combinations(ids, size)):
            if size > n:
                continue
            if any(J - {j} not in nonempty for j in J):
                continue
            if rng.random() < (0.9 if size == 1 else 0.7):
                nonempty.add(J)

    e_polys: dict[frozenset, BiPoly] = {}
    for J in sorted(nonempty, key=lambda s: (len(s), sorted(s))):
        dim = n - len(J)
        poly = _dual_product(rng, dim)
        if J and rng.random() < 0.2:
            poly = poly * rng.randint(2, 3)  # disconnected stratum
        e_polys[J] = poly

    def euler(J):
        return euler_number(e_polys[J])

    def weight(J):
        w = Fraction(1)
        for j in J:
            a = divisors[j - 1].discrepancy
            w *= -a / (a + 1)
        return w

    # stratum Chern numbers defined from the E-polynomials so the smooth-case
    # quadratic identity holds stratum by stratum
    gammas = {}
    for J in nonempty:
        dim = n - len(J)
        if dim >= 1:
            gammas[J] = 6 * (weighted_sum(e_polys[J], dim, 2)
                             - Fraction(dim, 12) * euler(J))

    # pullback numbers: free except on the total space, which is solved from
    # the aggregate relation
    pullbacks = {}
    for J in nonempty:
        if J and n - len(J) >= 1:
            pullbacks[J] = Fraction(rng.randint(-10, 10),
                                    rng.randint(1, max_denominator))
    target = sum((gammas[J] * weight(J) for J in gammas), Fraction(0))
    target -= sum(
        (sum((divisors[j - 1].discrepancy + 1 for j in J), Fraction(0))
         * euler(J) * weight(J) for J in nonempty if J),
        Fraction(0),
    )
    pullbacks[frozenset()] = target - sum(
        (pullbacks[J] * weight(J) for J in pullbacks if J), Fraction(0))

    # restriction numbers built top-down so the divisor recursion holds
    restrictions: dict[frozenset, dict[int, Fraction]] = {}
    for J in sorted(nonempty, key=lambda s: (len(s), sorted(s))):
        dim = n - len(J)
        nr: dict[int, Fraction] = {}
        for j in ids:
            if j in J:
                nr[j] = Fraction(0) if dim == 0 else restrictions[J - {j}][j] - euler(J)
            else:
                sup = J | {j}
                if sup not in nonempty:
                    nr[j] = Fraction(0)
                elif n - len(sup) == 0:
                    nr[j] = Fraction(euler(sup))  # points count = degree
                else:
                    nr[j] = Fraction(rng.randint(-8, 8))
        restrictions[J] = nr

    strata = []
    for J in nonempty:
        dim = n - len(J)
        strata.append(StratumData(
            J, e_polys[J], dim, euler=euler(J),
            c1_cd1=gammas.get(J),
            pullback_c1_cd1=pullbacks.get(J),
            normal_restrictions=restrictions[J]))
    return ResolutionData.build(n, divisors, strata)
