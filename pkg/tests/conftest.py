"""Shared builders for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from stringy.bipoly import BiPoly
from stringy.hodge import HodgeDiamond
from stringy.invariants import DivisorInfo, ResolutionData, StratumData


def random_dual_diamond(rng: random.Random, n: int) -> HodgeDiamond:
    """A valid Hodge diamond: unit corners, conjugation symmetry, duality."""
    entries: dict[tuple[int, int], int] = {}
    for p in range(n + 1):
        for q in range(p, n + 1):
            if (p, q) in entries:
                continue
            if {(p, q), (q, p)} & {(0, 0), (n, n)}:
                value = 1
            else:
                value = rng.randint(0, 25)
            for key in ((p, q), (q, p), (n - p, n - q), (n - q, n - p)):
                entries[key] = value
    return HodgeDiamond(n, entries)


def relabel(data: ResolutionData, mapping: dict[int, int]) -> ResolutionData:
    """Apply a divisor-index permutation to a resolution datum."""
    divisors = sorted(
        (DivisorInfo(mapping[d.index], d.discrepancy) for d in data.divisors),
        key=lambda d: d.index)
    strata = []
    for s in data.strata.values():
        restrictions = None
        if s.normal_restrictions is not None:
            restrictions = {mapping[j]: x for j, x in s.normal_restrictions.items()}
        strata.append(StratumData(
            frozenset(mapping[j] for j in s.subset), s.e_poly, s.dim,
            euler=s.euler, c1_cd1=s.c1_cd1, pullback_c1_cd1=s.pullback_c1_cd1,
            normal_restrictions=restrictions))
    return ResolutionData.build(data.dimension, divisors, strata)


def plane_with_line_datum() -> ResolutionData:
    """The projective plane with one embedded line as marked divisor.

    Degrees on the plane: c_1(O(line)) . c_1(plane) = 1 * 3 = 3; on the line
    itself c_1(O(line)) restricts to degree 1.  Used to exercise the divisor
    recursion 3 - 2 = 1 with honest geometric numbers.
    """
    plane = BiPoly({(0, 0): 1, (1, 1): 1, (2, 2): 1})
    line = BiPoly({(0, 0): 1, (1, 1): 1})
    return ResolutionData.build(
        2,
        [DivisorInfo(1, Fraction(0))],
        [
            StratumData(frozenset(), plane, 2, euler=3, c1_cd1=Fraction(9),
                        pullback_c1_cd1=Fraction(9),
                        normal_restrictions={1: Fraction(3)}),
            StratumData(frozenset({1}), line, 1, euler=2, c1_cd1=Fraction(2),
                        pullback_c1_cd1=Fraction(3),
                        normal_restrictions={1: Fraction(1)}),
        ],
    )
