"""Origin-preserving contact transformations of the (x, y, p) space.

A transformation is stored through its displacement germs
(x, y, p) -> (x + alpha, y + beta, p + gamma) and must preserve the
contact structure: the pullback of dy - p dx is a unit multiple of
dy - p dx.  Writing that identity out gives three scalar equations;
``verify_contact`` checks them and returns the unit, and
``solve_contact`` integrates them to recover a full transformation
from the data (alpha, beta at p = 0) that determines it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .curves import PlaneCurveGerm, rational_nth_root, reparametrize, rescale_parameter
from .errors import ContactDefectError, ValidationError
from .germs import Germ, contact_weights, evaluate_on_series, invert_unit, substitute
from .oracle import realize_order

X_MONO = (1, 0, 0)
Y_MONO = (0, 1, 0)
P_MONO = (0, 0, 1)


def _ratio(num, den):
    if isinstance(num, (int, Fraction)) and isinstance(den, (int, Fraction)):
        return Fraction(num, den)
    return num * den ** -1


class ContactMap:
    """Contact transformation fixing the origin, in displacement form."""

    __slots__ = ("weights", "alpha", "beta", "gamma")

    def __init__(self, alpha: Germ, beta: Germ, gamma: Germ):
        weights = alpha.weights
        for comp, name in ((alpha, "alpha"), (beta, "beta"), (gamma, "gamma")):
            if comp.weights != weights:
                raise ValidationError("displacement germs live in differently weighted rings")
            if not comp.in_maximal_ideal():
                raise ValidationError(f"{name} must vanish at the origin")
        self.weights = weights
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma

    @property
    def n(self) -> int:
        return self.weights[0]

    @property
    def m(self) -> int:
        return self.weights[1]

    def components(self) -> tuple[Germ, Germ, Germ]:
        return (self.alpha, self.beta, self.gamma)

    def agrees_with(self, other: "ContactMap") -> bool:
        return (
            self.alpha.agrees_with(other.alpha)
            and self.beta.agrees_with(other.beta)
            and self.gamma.agrees_with(other.gamma)
        )

    def truncate(self, accuracy) -> "ContactMap":
        return ContactMap(
            self.alpha.truncate(accuracy),
            self.beta.truncate(accuracy),
            self.gamma.truncate(accuracy),
        )

    def __repr__(self) -> str:
        return (
            f"ContactMap(x + {self.alpha!r}, y + {self.beta!r}, p + {self.gamma!r})"
        )


# -- exact families ------------------------------------------------------------


def identity_map(n: int, m: int) -> ContactMap:
    w = contact_weights(n, m)
    return ContactMap(Germ.zero(w), Germ.zero(w), Germ.zero(w))


def homothety(n: int, m: int, lam, mu) -> ContactMap:
    """(x, y, p) -> (lam*x, mu*y, (mu/lam)*p)."""
    if not lam or not mu:
        raise ValidationError("homothety factors must be non-zero")
    w = contact_weights(n, m)
    return ContactMap(
        Germ(w, {X_MONO: lam - 1}, math.inf),
        Germ(w, {Y_MONO: mu - 1}, math.inf),
        Germ(w, {P_MONO: _ratio(mu, lam) - 1}, math.inf),
    )


def linear_symplectic(n: int, m: int, a, b, c, d) -> ContactMap:
    """Contact lift of the unimodular plane map (x, p) -> (ax+bp, cx+dp).

    The y-coordinate picks up the quadratic correction that keeps
    dy - p dx invariant; the multiplier is exactly 1.
    """
    if a * d - b * c != 1:
        raise ValidationError("need a*d - b*c = 1")
    w = contact_weights(n, m)
    half = Fraction(1, 2)
    alpha = Germ(w, {X_MONO: a - 1, P_MONO: b}, math.inf)
    beta = Germ(
        w,
        {(2, 0, 0): half * a * c, (0, 0, 2): half * b * d, (1, 0, 1): b * c},
        math.inf,
    )
    gamma = Germ(w, {X_MONO: c, P_MONO: d - 1}, math.inf)
    return ContactMap(alpha, beta, gamma)


def linear_symplectic_inverse(n: int, m: int, a, b, c, d) -> ContactMap:
    return linear_symplectic(n, m, d, -b, -c, a)


def legendre_transformation(n: int, m: int) -> ContactMap:
    """(x, y, p) -> (-p, y - x*p, x), the classical involutive swap of x and p."""
    return linear_symplectic(n, m, 0, -1, 1, 0)


# -- the contact identity --------------------------------------------------------


@dataclass(frozen=True)
class ContactCheck:
    """Outcome of testing the contact identity on a map.

    ``multiplier`` is the unit by which the map rescales dy - p dx; it is
    reported even when the check fails, unless the failure is so degenerate
    the multiplier is meaningless.
    """

    ok: bool
    multiplier: Germ | None
    failures: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def verify_contact(phi: ContactMap) -> ContactCheck:
    """Check the contact identity and report the multiplier germ.

    The pullback of dy - p dx under the map decomposes over dx, dy, dp;
    matching coefficients forces
        d_p(beta) = (p + gamma) * d_p(alpha)
        d_x(beta) - (p + gamma) * (1 + d_x(alpha)) = -p * multiplier
    with multiplier = 1 + d_y(beta) - (p + gamma) * d_y(alpha).
    All equations are tested within the stored accuracy of the germs.
    """
    w = phi.weights
    alpha, beta, gamma = phi.components()
    p = Germ.variable(w, "p")
    one = Germ.constant(w, 1)
    p_shift = p + gamma
    multiplier = one + beta.partial("y") - p_shift * alpha.partial("y")
    dp_residual = beta.partial("p") - p_shift * alpha.partial("p")
    dx_residual = beta.partial("x") - p_shift * (one + alpha.partial("x")) + p * multiplier
    failures = []
    for residual, form in ((dp_residual, "dp"), (dx_residual, "dx")):
        if not residual.is_zero():
            failures.append(
                f"the {form} component of the pulled-back form does not cancel: "
                f"residual of weighted order {residual.valuation()} remains"
            )
    if multiplier.coefficient((0, 0, 0)) == 0:
        failures.append("the multiplier of dy - p dx vanishes at the origin")
    return ContactCheck(ok=not failures, multiplier=multiplier, failures=tuple(failures))


def require_contact(phi: ContactMap) -> Germ:
    """verify_contact, but failures raise and the multiplier is returned."""
    check = verify_contact(phi)
    if not check.ok:
        raise ContactDefectError("; ".join(check.failures))
    return check.multiplier


def solve_contact(alpha: Germ, beta0: Germ, accuracy=None) -> ContactMap:
    """Build the contact transformation with given alpha and p-free part of beta.

    The dp component of the contact identity is a linear first order
    differential relation in the p-direction; expanding everything in
    powers of p turns it into a recursion for the p-coefficients of beta,
    each step dividing by the unit 1 + d_x(alpha at p=0).  gamma is then
    determined rationally.  Raises ContactDefectError when that unit
    vanishes at the origin, and ValidationError for data no contact
    transformation can have.
    """
    w = alpha.weights
    wp = w[2]
    if beta0.weights != w:
        raise ValidationError("alpha and beta0 live in differently weighted rings")
    if any(mono[2] for mono in beta0.coeffs):
        raise ValidationError("beta0 must not involve p")
    if not alpha.in_maximal_ideal() or not beta0.in_maximal_ideal():
        raise ValidationError("displacements must vanish at the origin")
    if beta0.coeffs.get(X_MONO, 0):
        raise ValidationError(
            "beta0 has a linear x term; the contact identity forces that term to vanish"
        )
    if 1 + beta0.coeffs.get(Y_MONO, 0) == 0:
        raise ContactDefectError(
            "1 + d_y(beta0) vanishes at the origin; the multiplier would not be a unit"
        )
    if accuracy is None:
        accuracy = min(alpha.accuracy, beta0.accuracy)
    if accuracy == math.inf:
        raise ValidationError("an explicit finite accuracy is required for exact input data")
    target = min(accuracy, alpha.accuracy, beta0.accuracy)

    parts_a = alpha.p_parts()

    def a_part(j: int) -> Germ:
        if j in parts_a:
            return parts_a[j]
        if alpha.accuracy == math.inf:
            return Germ.zero(w)
        return Germ.zero(w, max(alpha.accuracy - j * wp, 0))

    def u_part(s: int) -> Germ:
        return a_part(s).partial("x") + a_part(s - 1).partial("y")

    unit = Germ.constant(w, 1) + a_part(0).partial("x")
    if 1 + alpha.coeffs.get(X_MONO, 0) == 0:
        raise ContactDefectError("1 + d_x(alpha) vanishes at the origin; no solution in this chart")
    unit_inv = invert_unit(unit, target)

    parts_b: dict[int, Germ] = {0: beta0}
    k = 0
    while (k + 1) * wp < target:
        total = a_part(k).scale(k)
        for j in range(1, k + 1):
            total = total + a_part(j).scale(j) * parts_b[k - j].partial("y")
        for j in range(0, k + 1):
            total = total + a_part(j + 1).scale(j + 1) * parts_b[k - j].partial("x")
        for r in range(0, k):
            total = total - u_part(k - r) * parts_b[r + 1].scale(r + 1)
        parts_b[k + 1] = (total * unit_inv).scale(Fraction(1, k + 1))
        k += 1
    beta = Germ.from_p_parts(w, parts_b).truncate(target)

    p = Germ.variable(w, "p")
    d_x = alpha.partial("x")
    d_y = alpha.partial("y")
    full_unit = Germ.constant(w, 1) + d_x + p * d_y
    gamma = invert_unit(full_unit, target) * (
        beta.partial("x") + p * (beta.partial("y") - d_x - p * d_y)
    )
    result = ContactMap(alpha.truncate(target), beta, gamma.truncate(target))
    require_contact(result)
    return result


# -- composition and classification ----------------------------------------------


def compose(first: ContactMap, second: ContactMap) -> ContactMap:
    """The transformation 'apply first, then second'.

    The result is re-checked against the contact identity; a failure can
    only come from an internal defect, not from valid inputs.
    """
    if first.weights != second.weights:
        raise ValidationError("cannot compose maps over different weight data")
    w = first.weights
    x1 = Germ.variable(w, "x") + first.alpha
    y1 = Germ.variable(w, "y") + first.beta
    p1 = Germ.variable(w, "p") + first.gamma
    result = ContactMap(
        first.alpha + substitute(second.alpha, x1, y1, p1),
        first.beta + substitute(second.beta, x1, y1, p1),
        first.gamma + substitute(second.gamma, x1, y1, p1),
    )
    require_contact(result)
    return result


@dataclass(frozen=True)
class Classification:
    triangular: bool
    tangent_to_identity: bool
    is_scaling: bool
    violations: tuple[str, ...]


def classify(phi: ContactMap) -> Classification:
    """Where the map sits in the filtration of the contact group.

    triangular: the linear parts of the y and p components contain no
    pure x term, so the flag x-axis < (x, p)-plane is preserved to first
    order.  tangent_to_identity: all three displacement germs have zero
    diagonal first derivatives, i.e. the differential at the origin is
    the identity on each coordinate line.  is_scaling: the map is exactly
    a homothety (x, y, p) -> (lam*x, mu*y, (mu/lam)*p) within accuracy.
    """
    violations = []
    if phi.beta.coefficient(X_MONO) != 0:
        violations.append("the y component has a linear x term")
    if phi.gamma.coefficient(X_MONO) != 0:
        violations.append("the p component has a linear x term")
    triangular = not violations
    tangent = True
    for comp, axis, mono in (
        (phi.alpha, "x", X_MONO),
        (phi.beta, "y", Y_MONO),
        (phi.gamma, "p", P_MONO),
    ):
        if comp.coefficient(mono) != 0:
            tangent = False
            violations.append(f"the {axis} component scales the {axis} direction")
    extras = (
        any(mo != X_MONO for mo in phi.alpha.coeffs)
        or any(mo != Y_MONO for mo in phi.beta.coeffs)
        or any(mo != P_MONO for mo in phi.gamma.coeffs)
    )
    lam = 1 + phi.alpha.coeffs.get(X_MONO, 0)
    mu = 1 + phi.beta.coeffs.get(Y_MONO, 0)
    rho = 1 + phi.gamma.coeffs.get(P_MONO, 0)
    scaling = not extras and bool(lam) and bool(mu) and rho == _ratio(mu, lam)
    return Classification(
        triangular=triangular,
        tangent_to_identity=tangent,
        is_scaling=scaling,
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class TriangularDecomposition:
    """phi = tangent o shear o scaling (scaling applied first)."""

    scaling: ContactMap
    shear: ContactMap
    tangent: ContactMap

    def recomposed(self) -> ContactMap:
        return compose(self.scaling, compose(self.shear, self.tangent))


def decompose_triangular(phi: ContactMap) -> TriangularDecomposition:
    """Split a triangular map into homothety * shear * (tangent to identity).

    The homothety carries the diagonal linear data (lambda, mu), the shear
    is the lift of (x, p) -> (x + b*p, p), and the remaining factor is
    tangent to the identity.  Raises ValidationError when the map is not
    triangular and ContactDefectError when the postconditions fail.
    """
    if not classify(phi).triangular:
        raise ValidationError("map is not triangular; no such decomposition exists")
    n, m = phi.n, phi.m
    lam = 1 + phi.alpha.coefficient(X_MONO)
    mu = 1 + phi.beta.coefficient(Y_MONO)
    if not lam or not mu:
        raise ContactDefectError("degenerate linear part; not a contact transformation")
    scaling = homothety(n, m, lam, mu)
    unscaled = compose(homothety(n, m, _ratio(1, lam), _ratio(1, mu)), phi)
    b = unscaled.alpha.coefficient(P_MONO)
    shear = linear_symplectic(n, m, 1, b, 0, 1)
    tangent = compose(linear_symplectic_inverse(n, m, 1, b, 0, 1), unscaled)
    if not classify(tangent).tangent_to_identity:
        raise ContactDefectError("residual factor is not tangent to the identity")
    result = TriangularDecomposition(scaling, shear, tangent)
    if not result.recomposed().agrees_with(phi):
        raise ContactDefectError("decomposition does not recompose to the original map")
    return result


# -- action on curves --------------------------------------------------------------


def act_on_curve(phi: ContactMap, curve: PlaneCurveGerm) -> PlaneCurveGerm:
    """Transform the curve and renormalize back to the chart x = t^n.

    The conormal lift of the image is reparametrized so its x-coordinate
    is again t^n with coefficient 1; this requires the transformed
    x-series to keep order n and its leading coefficient to admit an
    exact rational n-th root.
    """
    n, m = curve.n, curve.m
    if phi.weights != contact_weights(n, m):
        raise ValidationError(
            f"map built for weights {phi.weights} cannot act on a curve of type ({n}, {m})"
        )
    X, Y, P = curve.triple()
    x_new = X + evaluate_on_series(phi.alpha, X, Y, P)
    y_new = Y + evaluate_on_series(phi.beta, X, Y, P)
    order = x_new.order()
    if order != n:
        raise ValidationError(
            f"transformed x-coordinate has order {order}, not {n}; "
            "the image leaves the chart x = t^n"
        )
    lead = x_new.coefficient(n)
    if lead != 1:
        if not isinstance(lead, (int, Fraction)):
            raise ValidationError(
                f"cannot renormalize: leading coefficient {lead!r} is not rational"
            )
        eta = rational_nth_root(Fraction(lead), n)
        if eta is None:
            raise ValidationError(
                f"cannot renormalize: {lead} admits no exact rational root of degree {n}"
            )
        x_new = rescale_parameter(x_new, eta)
        y_new = rescale_parameter(y_new, eta)
    return reparametrize(x_new, y_new, n)


def forget_transform(curve: PlaneCurveGerm, order: int, scale, accuracy=None) -> ContactMap:
    """The transformation that adds scale * t^order to the y-series of the curve.

    A contact polynomial g with monic restriction of the given order is
    scaled, then split into the data (alpha, beta0) = (-d_p(g*scale),
    (g*scale) at p=0) and integrated to a full contact transformation.
    To first order the action changes the curve by
    y(t) -> y(t) + scale * t^order + higher terms; that first order
    statement is checked on the conormal lift before returning.
    """
    if not scale:
        raise ValidationError("the added term needs a non-zero coefficient")
    if accuracy is None:
        accuracy = curve.accuracy
    witness = realize_order(curve, order)
    b = witness.scale(scale)
    alpha = -b.partial("p")
    beta0 = Germ(b.weights, {mo: v for mo, v in b.coeffs.items() if mo[2] == 0}, b.accuracy)
    phi = solve_contact(alpha, beta0, accuracy)
    moved = phi.beta - Germ.variable(phi.weights, "p") * phi.alpha
    shift = evaluate_on_series(moved, *curve.triple())
    if shift.order() != order or shift.coefficient(order) != scale:
        raise ContactDefectError(
            f"the built transformation moves the curve at order {shift.order()} "
            f"instead of {order}"
        )
    return phi
