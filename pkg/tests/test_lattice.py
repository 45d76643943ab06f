import random
from fractions import Fraction

import pytest

from stringy.errors import DomainError, PoleError
from stringy.lattice import (
    LatticeFunction,
    lattice_restrict,
    poly_divmod,
    poly_gcd,
)
from stringy.series import correction_series


def F(x, y=1):
    return Fraction(x, y)


def test_poly_divmod_and_gcd():
    # (x^2 - 1) = (x + 1)(x - 1)
    quot, rem = poly_divmod([F(-1), F(0), F(1)], [F(1), F(1)])
    assert quot == (F(-1), F(1)) and rem == ()
    g = poly_gcd([F(-1), F(0), F(1)], [F(1), F(1)])
    assert g == (F(1), F(1))  # monic x + 1
    assert poly_gcd([F(2), F(2)], []) == (F(1), F(1))


def test_reduction_to_canonical_form():
    # (x^2 - 1)/(x - 1) reduces to x + 1
    f = LatticeFunction(1, [F(-1), F(0), F(1)], [F(-1), F(1)])
    assert f.num == (F(1), F(1)) and f.den == (F(1),)
    assert f.is_polynomial


def test_denominator_made_monic():
    f = LatticeFunction(1, [F(1)], [F(0), F(2)])
    assert f.den == (F(0), F(1)) and f.num == (F(1, 2),)


def test_zero_denominator_rejected():
    with pytest.raises(DomainError):
        LatticeFunction(1, [F(1)], [F(0)])


def test_correction_factor_unit_discrepancy():
    f = LatticeFunction.correction_factor(1, 1)
    assert f.num == (F(0), F(-1)) and f.den == (F(1), F(1))  # -u/(u+1)


def test_correction_factor_fractional_discrepancy():
    f = LatticeFunction.correction_factor(F(-1, 3), 3)
    assert f.num == (F(0), F(0), F(1)) and f.den == (F(1), F(1))  # x^2/(x+1)


def test_correction_factor_crepant_vanishes():
    f = LatticeFunction.correction_factor(0, 4)
    assert f.num == () and f.evaluate(7) == 0


def test_correction_factor_domain_errors():
    with pytest.raises(DomainError):
        LatticeFunction.correction_factor(-1, 1)
    with pytest.raises(DomainError):
        LatticeFunction.correction_factor(F(-1, 3), 2)  # 2*(2/3) not integral


def test_evaluate_and_poles():
    f = LatticeFunction.correction_factor(1, 1)
    assert f.evaluate(3) == F(-3, 4)
    with pytest.raises(PoleError):
        f.evaluate(-1)


def test_taylor_matches_correction_series_on_trivial_lattice():
    # with L = 1 the lattice variable is u itself, so the two expansions of
    # the same function must agree coefficient by coefficient
    for a in (1, 2, 3):
        lattice = LatticeFunction.correction_factor(a, 1).taylor_at_one(3)
        assert lattice == correction_series(a, 3)


def test_taylor_refuses_genuine_pole():
    f = LatticeFunction(1, [F(1)], [F(-1), F(1)])  # 1/(x-1)
    with pytest.raises(PoleError):
        f.taylor_at_one(2)


def test_lattice_restrict_spec_values():
    assert lattice_restrict([([1], [F(2)])], 1) == \
        LatticeFunction(1, [F(0), F(-1)], [F(1), F(1)])
    assert lattice_restrict([([1], [F(2, 3)])], 3) == \
        LatticeFunction(3, [F(0), F(0), F(1)], [F(1), F(1)])
    assert lattice_restrict([([1], [])], 1) == LatticeFunction.constant(1, 1)


def test_lattice_restrict_rejects_incompatible_order():
    with pytest.raises(DomainError):
        lattice_restrict([([1], [F(2, 3)])], 2)
    with pytest.raises(DomainError):
        lattice_restrict([([1], [F(-1)])], 1)


def test_lattice_restrict_with_repeated_exponents():
    # two identical factors: f_1^2 = x^2/(x+1)^2 on L = 1
    f = lattice_restrict([([1], [F(2), F(2)])], 1)
    assert f.num == (F(0), F(0), F(1))
    assert f.den == (F(1), F(2), F(1))


def test_restriction_evaluation_matches_direct_u_evaluation():
    """Evaluating the lattice form at x0 equals evaluating the defining
    expression at u0 = x0^L, for pole-free positive rationals."""
    rng = random.Random(5)
    for _ in range(40):
        q = rng.randint(1, 4)
        a = Fraction(rng.randint(-q + 1, 4 * q), q)
        L = (a + 1).denominator * rng.choice([1, 2])
        coeffs = [rng.randint(-3, 3) for _ in range(3)]
        f = lattice_restrict([(coeffs, [a + 1])], L)
        x0 = Fraction(rng.randint(2, 9), rng.randint(1, 3))
        if x0 == 1:
            continue
        u0 = x0**L
        direct = sum(c * u0**p for p, c in enumerate(coeffs))
        m = (L * (a + 1)).numerator
        if x0**m == 1:
            continue
        direct *= (u0 - 1) / (x0**m - 1) - 1
        assert f.evaluate(x0) == direct, (a, L, coeffs, x0)


def test_u_derivatives_undo_the_substitution():
    # restriction of the wp113-style datum: value 5, slope 5, curvature 20/9
    f = lattice_restrict([([1, 2, 1], []), ([1, 1], [F(2, 3)])], 3)
    assert f.u_derivative_at_one(0) == 5
    assert f.u_derivative_at_one(1) == 5
    assert f.u_derivative_at_one(2) == F(20, 9)
    with pytest.raises(DomainError):
        f.u_derivative_at_one(3)
