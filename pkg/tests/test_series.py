"""Truncated power series arithmetic against hand-computed expansions."""

import math
from fractions import Fraction

import pytest

from legcurve.errors import InsufficientPrecisionError, ValidationError
from legcurve.series import (
    TruncatedSeries,
    series_compose,
    series_inverse_unit,
    series_nth_root,
    series_reverse,
)


def S(coeffs, accuracy=math.inf):
    return TruncatedSeries(coeffs, accuracy)


def test_constructor_drops_zero_coefficients():
    f = S({1: 1, 2: 0, 3: Fraction(0)})
    assert dict(f.items()) == {1: 1}


def test_constructor_rejects_negative_exponents():
    with pytest.raises(ValidationError):
        S({-1: 1})


def test_coefficient_and_order():
    f = S({2: 5, 7: -1}, 9)
    assert f.coefficient(2) == 5
    assert f.coefficient(4) == 0
    assert f.order() == 2
    with pytest.raises(InsufficientPrecisionError):
        f.coefficient(9)


def test_order_of_truncated_zero_is_undecidable():
    f = S({}, 5)
    assert f.is_zero()
    with pytest.raises(InsufficientPrecisionError):
        f.order()
    assert f.order_lower_bound() == 5
    assert S({}).order() == math.inf


def test_addition_keeps_worst_accuracy():
    f = S({1: 1}, 10)
    g = S({1: -1, 4: 2}, 6)
    h = f + g
    assert h.accuracy == 6
    assert dict(h.items()) == {4: 2}


def test_multiplication_accuracy_uses_orders():
    # product is exact below min(acc_f + ord_g, acc_g + ord_f)
    f = S({2: 1}, 5)
    g = S({3: 1}, 7)
    h = f * g
    assert h.accuracy == 8
    assert dict(h.items()) == {5: 1}


def test_multiplication_by_exact_series_is_transparent():
    f = S({0: 1, 1: 1})
    g = S({0: 1, 1: -1})
    assert dict((f * g).items()) == {0: 1, 2: -1}
    assert (f * g).accuracy == math.inf


def test_power():
    f = S({1: 1, 2: 1})
    cube = f ** 3
    # (t + t^2)^3 = t^3 + 3t^4 + 3t^5 + t^6
    assert dict(cube.items()) == {3: 1, 4: 3, 5: 3, 6: 1}
    assert f ** 0 == S({0: 1})


def test_shift_and_derivative():
    f = S({3: 2, 5: -1}, 8)
    assert dict(f.shift(-3).items()) == {0: 2, 2: -1}
    assert f.shift(-3).accuracy == 5
    with pytest.raises(ValidationError):
        f.shift(-4)
    d = f.derivative()
    assert dict(d.items()) == {2: 6, 4: -5}
    assert d.accuracy == 7


def test_compose_fixture_quadratic_in_cubic():
    outer = S({1: 1, 2: 1})
    inner = S({1: 1, 3: 1})
    expected = {1: 1, 2: 1, 3: 1, 4: 2, 6: 1}
    assert dict(series_compose(outer, inner).items()) == expected


def test_compose_fixture_square():
    outer = S({2: 1})
    inner = S({1: 1, 2: 1})
    assert dict(series_compose(outer, inner).items()) == {2: 1, 3: 2, 4: 1}


def test_compose_requires_positive_inner_order():
    with pytest.raises(ValidationError):
        series_compose(S({1: 1}), S({0: 1, 1: 1}))


def test_compose_accuracy_truncates():
    outer = S({1: 1}, 4)
    inner = S({1: 1, 5: 1})
    h = series_compose(outer, inner)
    assert h.accuracy == 4
    assert dict(h.items()) == {1: 1}


def test_inverse_unit_geometric_series():
    f = S({0: 1, 1: -1}, 6)
    g = series_inverse_unit(f)
    assert dict(g.items()) == {0: 1, 1: 1, 2: 1, 3: 1, 4: 1, 5: 1}
    assert (f * g).agrees_with(S({0: 1}))


def test_inverse_unit_stays_exact_rational():
    g = series_inverse_unit(S({0: 2, 1: 1}, 4))
    assert g.coefficient(0) == Fraction(1, 2)
    assert g.coefficient(1) == Fraction(-1, 4)
    assert all(isinstance(c, Fraction) for _, c in g.items())


def test_reverse_fixture_catalan_signs():
    # inverse of t + t^2 is (sqrt(1+4t) - 1)/2, signed Catalan numbers
    g = series_reverse(S({1: 1, 2: 1}), accuracy=6)
    assert dict(g.items()) == {1: 1, 2: -1, 3: 2, 4: -5, 5: 14}


def test_reverse_round_trip():
    f = S({1: 1, 2: 3, 4: -2}, 9)
    g = series_reverse(f)
    assert series_compose(f, g).agrees_with(S({1: 1}))
    assert series_compose(g, f).agrees_with(S({1: 1}))


def test_reverse_requires_order_one():
    with pytest.raises(ValidationError):
        series_reverse(S({2: 1}, 5))


def test_nth_root_binomial_fixture():
    f = S({0: 1, 1: 1}, 4)
    g = series_nth_root(f, 3)
    assert dict(g.items()) == {
        0: 1,
        1: Fraction(1, 3),
        2: Fraction(-1, 9),
        3: Fraction(5, 81),
    }


def test_nth_root_of_perfect_square():
    f = S({0: 1, 1: 2, 2: 1})  # (1+t)^2, exact
    g = series_nth_root(f.truncate(7), 2)
    assert dict(g.items()) == {0: 1, 1: 1}


def test_nth_root_requires_unit_one():
    with pytest.raises(ValidationError):
        series_nth_root(S({0: 2}, 4), 2)


def test_nth_root_consistency():
    f = S({0: 1, 2: -3, 3: 5}, 10)
    g = series_nth_root(f, 4)
    assert (g ** 4).agrees_with(f)
