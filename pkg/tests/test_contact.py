"""Contact transformations: the defining identity, the Cauchy-style solver,
composition, classification, and the action on curves.

The two solver fixtures are integrated by hand.  With alpha = 0 and
beta0 = -x^4 the dp equation forces beta = -x^4 and the dx equation gives
gamma = -4x^3.  With alpha = -2p, beta0 = 0 the recursion yields
beta = -p^2, gamma = 0, i.e. the lift of the shear (x, p) -> (x - 2p, p).
"""

import math
from fractions import Fraction

import pytest

from legcurve.contact import (
    ContactMap,
    act_on_curve,
    classify,
    compose,
    decompose_triangular,
    forget_transform,
    homothety,
    identity_map,
    legendre_transformation,
    linear_symplectic,
    linear_symplectic_inverse,
    require_contact,
    solve_contact,
    verify_contact,
)
from legcurve.curves import PlaneCurveGerm
from legcurve.errors import ContactDefectError, NotRealizableError, ValidationError
from legcurve.germs import Germ, contact_weights, evaluate_on_series

W = contact_weights(3, 10)
X, Y, P = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def germ(coeffs, accuracy=math.inf):
    return Germ(W, coeffs, accuracy)


def test_constructor_rejects_bad_displacements():
    with pytest.raises(ValidationError):
        ContactMap(germ({}), germ({(0, 0, 0): 1}), germ({}))
    other = Germ(contact_weights(4, 9), {}, math.inf)
    with pytest.raises(ValidationError):
        ContactMap(germ({}), other, germ({}))


def test_identity_and_homothety_verify():
    check = verify_contact(identity_map(3, 10))
    assert check.ok and not check.failures
    assert dict(check.multiplier.coeffs) == {(0, 0, 0): 1}

    h = homothety(3, 10, 2, 3)
    check = verify_contact(h)
    assert check.ok
    assert dict(check.multiplier.coeffs) == {(0, 0, 0): 3}
    assert h.gamma.coefficient(P) == Fraction(1, 2)
    with pytest.raises(ValidationError):
        homothety(3, 10, 0, 1)


def test_legendre_passes_and_squares_to_minus_one():
    leg = legendre_transformation(3, 10)
    check = verify_contact(leg)
    assert check.ok
    assert dict(check.multiplier.coeffs) == {(0, 0, 0): 1}
    twice = compose(leg, leg)
    assert twice.agrees_with(linear_symplectic(3, 10, -1, 0, 0, -1))


def test_linear_symplectic_needs_unit_determinant():
    with pytest.raises(ValidationError):
        linear_symplectic(3, 10, 1, 1, 1, 1)


def test_linear_symplectic_inverse():
    phi = linear_symplectic(3, 10, 2, 3, 1, 2)
    inv = linear_symplectic_inverse(3, 10, 2, 3, 1, 2)
    assert compose(phi, inv).agrees_with(identity_map(3, 10))
    assert compose(inv, phi).agrees_with(identity_map(3, 10))


def test_verify_catches_broken_map():
    bad = ContactMap(germ({P: -2}), germ({(0, 0, 2): 1}), germ({}))
    check = verify_contact(bad)
    assert not check.ok
    assert any("dp" in f for f in check.failures)
    with pytest.raises(ContactDefectError):
        require_contact(bad)


def test_solve_pure_y_translation():
    phi = solve_contact(germ({}), germ({(4, 0, 0): -1}), 24)
    assert dict(phi.beta.coeffs) == {(4, 0, 0): -1}
    assert dict(phi.gamma.coeffs) == {(3, 0, 0): -4}
    assert phi.alpha.is_zero()


def test_solve_recovers_shear():
    phi = solve_contact(germ({P: -2}), germ({}), 24)
    assert phi.agrees_with(linear_symplectic(3, 10, 1, -2, 0, 1))


def test_solve_beta_keeps_prescribed_p_free_part():
    alpha = germ({(2, 0, 0): 1})
    beta0 = germ({(0, 1, 0): Fraction(1, 2), (3, 0, 0): -2})
    phi = solve_contact(alpha, beta0, 30)
    assert verify_contact(phi).ok
    p_free = {mo: v for mo, v in phi.beta.coeffs.items() if mo[2] == 0}
    assert p_free == dict(beta0.coeffs)
    assert dict(phi.alpha.coeffs) == {(2, 0, 0): 1}


def test_solve_validations():
    with pytest.raises(ValidationError, match="involve p"):
        solve_contact(germ({}), germ({P: 1}), 20)
    with pytest.raises(ValidationError, match="linear x term"):
        solve_contact(germ({}), germ({X: 1}), 20)
    with pytest.raises(ValidationError, match="vanish at the origin"):
        solve_contact(germ({(0, 0, 0): 1}), germ({}), 20)
    with pytest.raises(ValidationError, match="finite accuracy"):
        solve_contact(germ({P: 1}), germ({}))
    other = Germ(contact_weights(4, 9), {}, math.inf)
    with pytest.raises(ValidationError, match="weighted"):
        solve_contact(germ({}), other, 20)
    with pytest.raises(ContactDefectError):
        solve_contact(germ({X: -1}), germ({}), 20)
    with pytest.raises(ContactDefectError, match="d_y"):
        solve_contact(germ({}), germ({(0, 1, 0): -1}), 20)


def test_compose_identity_is_neutral():
    ident = identity_map(3, 10)
    phi = linear_symplectic(3, 10, 1, -2, 0, 1)
    assert compose(ident, phi).agrees_with(phi)
    assert compose(phi, ident).agrees_with(phi)


def test_compose_is_associative():
    a = homothety(3, 10, 2, 3)
    b = linear_symplectic(3, 10, 1, 1, 0, 1)
    c = legendre_transformation(3, 10)
    left = compose(compose(a, b), c)
    right = compose(a, compose(b, c))
    assert left.agrees_with(right)


def test_classify_homothety():
    cls = classify(homothety(3, 10, 2, 3))
    assert cls.triangular and cls.is_scaling and not cls.tangent_to_identity
    assert "the x component scales the x direction" in cls.violations


def test_classify_legendre():
    cls = classify(legendre_transformation(3, 10))
    assert not cls.triangular
    assert "the p component has a linear x term" in cls.violations
    assert not cls.is_scaling


def test_classify_shear_and_identity():
    cls = classify(linear_symplectic(3, 10, 1, 4, 0, 1))
    assert cls.triangular and cls.tangent_to_identity and not cls.is_scaling
    cls = classify(identity_map(3, 10))
    assert cls.triangular and cls.tangent_to_identity and cls.is_scaling
    assert cls.violations == ()


def test_decompose_triangular_round_trip():
    scaling = homothety(3, 10, 2, 3)
    shear = linear_symplectic(3, 10, 1, 5, 0, 1)
    tangent = solve_contact(germ({}), germ({(4, 0, 0): -1}), 24)
    phi = compose(scaling, compose(shear, tangent))
    dec = decompose_triangular(phi)
    assert dec.scaling.agrees_with(scaling)
    assert dec.shear.agrees_with(shear)
    assert dec.tangent.agrees_with(tangent)
    assert dec.recomposed().agrees_with(phi)
    assert classify(dec.tangent).tangent_to_identity


def test_decompose_rejects_non_triangular():
    with pytest.raises(ValidationError):
        decompose_triangular(legendre_transformation(3, 10))


def test_act_beta_removes_a_term():
    curve = PlaneCurveGerm(3, {10: 1, 12: 1})
    phi = solve_contact(germ({}), germ({(4, 0, 0): -1}), 24)
    moved = act_on_curve(phi, curve)
    assert moved.coefficients == {10: 1}
    assert moved.equisingularity_type() == (3, 10)


def test_act_homothety_scales_y():
    curve = PlaneCurveGerm(3, {10: 1, 11: 1})
    moved = act_on_curve(homothety(3, 10, 1, 2), curve)
    assert moved.coefficients == {10: 2, 11: 2}


def test_act_homothety_rescales_parameter():
    curve = PlaneCurveGerm(3, {10: 1, 11: 1})
    moved = act_on_curve(homothety(3, 10, 8, 1), curve)
    assert moved.coefficients == {10: Fraction(1, 1024), 11: Fraction(1, 2048)}
    with pytest.raises(ValidationError, match="rational root"):
        act_on_curve(homothety(3, 10, 2, 1), curve)


def test_act_rejects_chart_leaving_map():
    curve = PlaneCurveGerm(3, {10: 1, 11: 1})
    with pytest.raises(ValidationError, match="order 7, not 3"):
        act_on_curve(legendre_transformation(3, 10), curve)
    with pytest.raises(ValidationError, match="cannot act"):
        act_on_curve(homothety(4, 9, 1, 2), curve)


def test_forget_transform_p_free_witness():
    curve = PlaneCurveGerm(3, {10: 1})
    phi = forget_transform(curve, 12, 5)
    assert phi.alpha.is_zero()
    assert {mo: v for mo, v in phi.beta.coeffs.items() if mo[2] == 0} == {(4, 0, 0): 5}
    phi = forget_transform(curve, 13, 1)
    assert dict(phi.beta.coeffs) == {(1, 1, 0): 1}


def test_forget_transform_p_witness():
    curve = PlaneCurveGerm(3, {10: 1})
    phi = forget_transform(curve, 14, 2)
    assert dict(phi.alpha.coeffs) == {P: Fraction(-9, 25)}
    assert phi.beta.coefficient((0, 0, 2)) == Fraction(-9, 50)
    moved = phi.beta - Germ.variable(W, "p") * phi.alpha
    shift = evaluate_on_series(moved, *curve.triple())
    assert shift.order() == 14 and shift.coefficient(14) == 2


def test_forget_transform_shifts_every_usable_order():
    curve = PlaneCurveGerm(3, {10: 1})
    for order in (12, 13, 14, 15, 16, 17):
        phi = forget_transform(curve, order, 3)
        moved = phi.beta - Germ.variable(W, "p") * phi.alpha
        shift = evaluate_on_series(moved, *curve.triple())
        assert shift.order() == order and shift.coefficient(order) == 3


def test_forget_transform_rejections():
    curve = PlaneCurveGerm(3, {10: 1})
    with pytest.raises(ValidationError):
        forget_transform(curve, 12, 0)
    with pytest.raises(NotRealizableError):
        forget_transform(curve, 11, 1)
