import random
from fractions import Fraction
from math import comb, lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stringy.errors import DomainError
from stringy.lattice import LatticeFunction
from stringy.series import SeriesAtOne, correction_series, generalized_binomial


def test_generalized_binomial_matches_integers():
    for n in range(6):
        for k in range(6):
            assert generalized_binomial(Fraction(n), k) == comb(n, k) if k <= n \
                else generalized_binomial(Fraction(n), k) == 0


def test_generalized_binomial_rational_argument():
    assert generalized_binomial(Fraction(1, 2), 2) == Fraction(-1, 8)


def test_correction_series_crepant_divisor_vanishes():
    assert correction_series(0) == SeriesAtOne([0, 0, 0, 0])


def test_correction_series_unit_discrepancy():
    s = correction_series(1)
    assert s.coefficient(0) == Fraction(-1, 2)
    assert s.coefficient(1) == Fraction(-1, 4)
    assert s.derivative_value(2) == Fraction(1, 4)


def test_correction_series_fractional_discrepancy():
    assert correction_series(Fraction(-1, 3)).coefficient(0) == Fraction(1, 2)


def test_correction_series_closed_forms_for_200_random_rationals():
    rng = random.Random(20240)
    for _ in range(200):
        q = rng.randint(1, 12)
        a = Fraction(rng.randint(-q + 1, 10 * q), q)
        s = correction_series(a)
        assert s.coefficient(0) == -a / (a + 1)
        assert s.derivative_value(1) == -a / (2 * (a + 1))
        assert s.derivative_value(2) == a * (a + 2) / (6 * (a + 1))


def test_correction_series_domain_errors():
    with pytest.raises(DomainError):
        correction_series(-1)
    with pytest.raises(DomainError):
        correction_series(Fraction(-3, 2))
    with pytest.raises(DomainError):
        correction_series(1, order=1)


def test_from_u_polynomial_expands_plane_restriction():
    s = SeriesAtOne.from_u_polynomial([1, 1, 1])
    assert s == SeriesAtOne([3, 3, 1, 0])


def test_truncation_closes_operations():
    a = SeriesAtOne([1, 2, 3])
    b = SeriesAtOne([Fraction(1, 2), 0, 1, 5])
    assert (a + b).order == 2
    assert (a * b).order == 2
    assert (a * b).coefficient(2) == 1 * 1 + 2 * 0 + 3 * Fraction(1, 2)


@st.composite
def invertible_series(draw):
    c0 = draw(st.fractions(min_value=-5, max_value=5).filter(lambda f: f != 0))
    rest = [draw(st.fractions(min_value=-5, max_value=5)) for _ in range(3)]
    return SeriesAtOne([c0] + rest)


@settings(max_examples=100)
@given(invertible_series())
def test_reciprocal_is_inverse(s):
    assert s * s.reciprocal() == SeriesAtOne.constant(1, s.order)


def test_reciprocal_needs_nonzero_constant():
    with pytest.raises(DomainError):
        SeriesAtOne([0, 1]).reciprocal()


def test_compose_with_identity():
    s = SeriesAtOne([5, -1, Fraction(2, 3), 7])
    identity = SeriesAtOne([0, 1, 0, 0])
    assert s.compose(identity) == s


def test_compose_requires_vanishing_inner():
    with pytest.raises(DomainError):
        SeriesAtOne([1, 1]).compose(SeriesAtOne([1, 1]))


def _eps_of_delta(L: int, order: int) -> SeriesAtOne:
    """eps(delta) = (1 + delta)^L - 1, the change of variable under u = x^L."""
    return SeriesAtOne([0] + [generalized_binomial(Fraction(L), k)
                              for k in range(1, order + 1)])


def test_series_products_and_sums_match_rational_function_expansion():
    """For random pairs (a, b) the series ring must agree with an expansion
    computed entirely through exact rational-function arithmetic: expanding
    the reduced fraction at x = 1 and composing the series in u = x^L with
    eps(delta) lands both routes in the same variable."""
    rng = random.Random(99)
    order = 3
    for _ in range(60):
        qa, qb = rng.randint(1, 4), rng.randint(1, 4)
        a = Fraction(rng.randint(-qa + 1, 4 * qa), qa)
        b = Fraction(rng.randint(-qb + 1, 4 * qb), qb)
        L = lcm((a + 1).denominator, (b + 1).denominator)
        fa = LatticeFunction.correction_factor(a, L)
        fb = LatticeFunction.correction_factor(b, L)
        sa, sb = correction_series(a, order), correction_series(b, order)
        eps = _eps_of_delta(L, order)
        for series, function in ((sa * sb, fa * fb), (sa + sb, fa + fb)):
            assert series.compose(eps) == function.taylor_at_one(order), (a, b)


def test_derivative_values_match_polynomial_calculus():
    # (1 + u)^2 = 1 + 2u + u^2: derivatives at 1 are 4 and 2
    s = SeriesAtOne.from_u_polynomial([1, 2, 1])
    assert s.derivative_value(0) == 4
    assert s.derivative_value(1) == 4
    assert s.derivative_value(2) == 2
    with pytest.raises(DomainError):
        s.derivative_value(4)
