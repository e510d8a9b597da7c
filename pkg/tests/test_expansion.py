"""Symbolic expansion coefficients over Z[a_m.., mu] and their determinants.

Hand fixtures for (3, 10), cutoff 18.  The twisted series is
p~ = mu*a10 t^7 + (mu+1)*a11 t^8 + ... so for the family (1+l, 1-l, l)
on columns 13, 14 the matrix is [[a10, a11], [mu*a10, (mu+1)*a11]]
with determinant a10*a11: the mu parts cancel.
"""

from fractions import Fraction

import pytest

from legcurve.curves import PlaneCurveGerm
from legcurve.errors import ValidationError
from legcurve.expansion import ExpansionContext, determinant, leading_monomial
from legcurve.germs import Germ, contact_weights, evaluate_on_series
from legcurve.sympoly import Poly


@pytest.fixture(scope="module")
def ctx():
    return ExpansionContext(3, 10)


def test_context_setup(ctx):
    assert ctx.cutoff == 18  # symbols a10 .. a17
    assert ctx.gens[0] == "mu"


def test_context_validation():
    with pytest.raises(ValidationError):
        ExpansionContext(2, 4)
    with pytest.raises(ValidationError):
        ExpansionContext(3, 10, cutoff=9)
    with pytest.raises(ValidationError):
        ExpansionContext(5, 12)  # default cutoff 44 over the cap


def test_twisted_series(ctx):
    mu = ctx.mu()
    tw = ctx.twisted_p_series()
    assert tw[7] == mu * ctx.coefficient_symbol(10)
    assert tw[8] == (mu + 1) * ctx.coefficient_symbol(11)


def test_simple_entries(ctx):
    one = Poly.const(ctx.gens, 1)
    assert ctx.entry((1, 0, 0), 3) == one
    assert not ctx.entry((1, 0, 0), 4)
    assert ctx.entry((0, 1, 0), 10) == ctx.coefficient_symbol(10)
    assert not ctx.entry((0, 1, 0), 9)
    mu = ctx.mu()
    assert ctx.entry((0, 0, 1), 7) == mu * ctx.coefficient_symbol(10)
    assert ctx.entry((0, 0, 1), 8) == (mu + 1) * ctx.coefficient_symbol(11)


def test_quadratic_entries(ctx):
    mu = ctx.mu()
    a10 = ctx.coefficient_symbol(10)
    a11 = ctx.coefficient_symbol(11)
    assert ctx.entry((0, 0, 2), 14) == mu ** 2 * a10 ** 2
    assert ctx.entry((0, 0, 2), 15) == 2 * mu * (mu + 1) * a10 * a11


def test_negative_x_power(ctx):
    mu = ctx.mu()
    assert ctx.entry((-1, 0, 1), 4) == mu * ctx.coefficient_symbol(10)
    with pytest.raises(ValidationError, match="negative t-exponents"):
        ctx.entry((-4, 1, 0), 0)


def test_closed_form_agrees_with_direct(ctx):
    fam = [(0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 0, 1), (0, 0, 2), (0, 1, 1)]
    for index in fam:
        for k in range(ctx.cutoff):
            assert ctx.entry(index, k) == ctx.entry_closed_form(index, k), (index, k)


def test_mu_derivative_identity(ctx):
    for index in [(1, 0, 1), (2, 0, 1), (1, 0, 2), (1, 1, 1)]:
        for k in range(ctx.cutoff):
            assert ctx.mu_derivative_matches(index, k), (index, k)
    with pytest.raises(ValidationError):
        ctx.mu_derivative_matches((0, 1, 1), 10)
    with pytest.raises(ValidationError):
        ctx.mu_derivative_matches((1, 1, 0), 10)


def test_family_indices_and_valuation(ctx):
    assert ctx.family_indices(1, 1) == [(1, 1, 0), (2, 0, 1)]
    assert ctx.family_valuation(1, 1) == 13
    assert ctx.family_indices(2, 0) == [(2, 0, 0)]


def test_family_determinant_drops_mu(ctx):
    det = ctx.family_determinant(1, 1, [13, 14])
    expected = ctx.coefficient_symbol(10) * ctx.coefficient_symbol(11)
    assert det == expected
    assert ctx.family_determinant(1, 1, [13, 15]) == (
        2 * ctx.coefficient_symbol(10) * ctx.coefficient_symbol(12)
    )


def test_family_determinant_shape_check(ctx):
    with pytest.raises(ValidationError):
        ctx.family_determinant(1, 1, [13])


def test_minor_survives_twist(ctx):
    assert ctx.minor_survives_twist(0, 1, 1, [13, 14])
    assert ctx.minor_survives_twist(1, 1, 1, [13])
    assert ctx.minor_survives_twist(0, 1, 1, [0, 1])  # identically zero block
    with pytest.raises(ValidationError):
        ctx.minor_survives_twist(0, 1, 1, [13])


def test_specialize_matches_restriction(ctx):
    curve = PlaneCurveGerm(3, {10: 2, 11: 3, 13: -1})
    values = {"mu": 10, "a10": 2, "a11": 3, "a13": -1}
    values.update({f"a{s}": 0 for s in (12, 14, 15, 16, 17)})
    w = contact_weights(3, 10)
    for index in [(0, 1, 0), (1, 0, 1), (0, 0, 2), (2, 1, 0)]:
        i, j, l = index
        g = Germ(w, {index: 1}, float("inf"))
        restricted = evaluate_on_series(g, *curve.triple())
        for k in range(ctx.cutoff):
            got = ctx.entry(index, k).substitute(values).as_constant()
            assert got == 3 ** l * restricted.coefficient(k), (index, k)


def test_determinant_helper():
    gens = ("u",)
    u = Poly.variable(gens, "u")
    one = Poly.const(gens, 1)
    two = Poly.const(gens, 2)
    assert determinant([[u, one], [two, u]]) == u * u - 2
    with pytest.raises(ValidationError):
        determinant([[u, one]])
    zero = Poly.const(gens, 0)
    with pytest.raises(ValidationError):
        determinant([[zero] * 7 for _ in range(7)])


def test_leading_monomial(ctx):
    a10 = ctx.coefficient_symbol(10)
    a11 = ctx.coefficient_symbol(11)
    named, coeff = leading_monomial(a10 ** 2 * a11 + 3 * a10 * a11 ** 2)
    assert named == {"a10": 1, "a11": 2}
    assert coeff == Fraction(3)
    with pytest.raises(ValidationError):
        leading_monomial(ctx.mu() * a10)
    with pytest.raises(ValidationError):
        leading_monomial(Poly.const(ctx.gens, 0))
