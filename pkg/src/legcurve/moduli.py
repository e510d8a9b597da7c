"""Normal forms of generic curves and coordinates on their moduli.

A generic curve of type (n, m) can be taken by contact transformations to
a short form: y-support inside {m} union the free exponents (the gaps of
the generic semigroup above m, plus the extra order s).  The reduction
kills removable exponents bottom-up, each step using the transformation
built from a witness polynomial of that restriction order, and each step
is checked a posteriori: the target coefficient must vanish and nothing
below it may move.  The coefficients left at the free exponents are the
moduli coordinates; reparametrizations by n-th roots of unity act on them
and orbit equivalence is decided over the corresponding cyclotomic field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .contact import act_on_curve, forget_transform
from .curves import PlaneCurveGerm
from .cyclotomic import Cyclotomic
from .errors import (
    ContactDefectError,
    InsufficientPrecisionError,
    NonGenericCurveError,
    ValidationError,
)
from .oracle import conormal_semigroup
from .semigroups import free_indices, generic_semigroup, try_s_invariant


def is_generic(curve: PlaneCurveGerm) -> bool:
    """Does the conormal semigroup agree with the generic one for this type?"""
    return conormal_semigroup(curve) == generic_semigroup(curve.n, curve.m)


def is_short_form(curve: PlaneCurveGerm) -> bool:
    allowed = {curve.m} | set(free_indices(curve.n, curve.m))
    return set(curve.coefficients) <= allowed


@dataclass(frozen=True)
class ReductionStep:
    """One applied transformation: it added ``scale * t^order`` to y."""

    order: int
    scale: object


@dataclass(frozen=True)
class NormalForm:
    curve: PlaneCurveGerm
    unit: object
    steps: tuple[ReductionStep, ...]
    free: tuple[int, ...]

    def moduli_point(self) -> dict[int, object]:
        return {k: self.curve.coefficient(k) for k in self.free}


def normal_form(curve: PlaneCurveGerm, margin: int | None = None) -> NormalForm:
    """Reduce a generic curve to its short form.

    Raises NonGenericCurveError when the conormal semigroup is not the
    generic one, InsufficientPrecisionError when the input does not carry
    enough coefficients (or the working margin is too small), and
    ContactDefectError when an applied step fails its postconditions.
    """
    n, m = curve.n, curve.m
    expected = generic_semigroup(n, m)
    actual = conormal_semigroup(curve)
    if actual != expected:
        raise NonGenericCurveError(
            f"curve of type ({n}, {m}) has conormal semigroup with gaps "
            f"{actual.gaps}, generic gaps are {expected.gaps}"
        )
    plane_conductor = (n - 1) * (m - 1)
    keep = max(plane_conductor, m + 1)
    if curve.accuracy < keep:
        raise InsufficientPrecisionError(
            f"normal form needs the y-coefficients below {keep}; "
            f"curve is only exact below {curve.accuracy}"
        )
    if margin is None:
        margin = n + m
    working_accuracy = keep + margin
    # coefficients at or above the plane conductor sit at removable orders,
    # so dropping them stays inside the equivalence class
    working = curve.truncate(keep).as_polynomial(math.inf)

    unit = 1
    leading = working.coefficient(m)
    if leading != 1:
        unit = (
            Fraction(1, leading) if isinstance(leading, (int, Fraction)) else leading ** -1
        )
        working = working.scale_y(unit)

    s = try_s_invariant(n, m)
    free = free_indices(n, m)
    targets = [
        k for k in range(m + 1, plane_conductor) if k in expected and k != s
    ]
    steps: list[ReductionStep] = []
    for k in targets:
        coeff = working.coefficient(k)
        if not coeff:
            continue
        phi = forget_transform(working, k, -coeff, accuracy=working_accuracy)
        candidate = act_on_curve(phi, working)
        if candidate.equisingularity_type() != (n, m):
            raise ContactDefectError(
                f"reduction at order {k} changed the equisingularity type"
            )
        if candidate.accuracy < keep:
            raise InsufficientPrecisionError(
                f"working precision exhausted at order {k}; retry with a larger margin"
            )
        if candidate.coefficient(k) != 0:
            raise ContactDefectError(
                f"reduction stalled: coefficient at t^{k} is still "
                f"{candidate.coefficient(k)!r}"
            )
        moved = [
            j
            for j in range(m, k)
            if candidate.coefficient(j) != working.coefficient(j)
        ]
        if moved:
            raise ContactDefectError(
                f"reduction at order {k} disturbed lower coefficients at {moved}"
            )
        steps.append(ReductionStep(k, -coeff))
        working = candidate

    final = working.truncate(keep)
    stray = set(final.coefficients) - ({m} | set(free))
    if stray:
        raise ContactDefectError(
            f"short form still carries removable exponents {sorted(stray)}"
        )
    return NormalForm(final, unit, tuple(steps), free)


def moduli_point(curve: PlaneCurveGerm) -> dict[int, object]:
    return normal_form(curve).moduli_point()


# -- residual reparametrization action -----------------------------------------


def _as_cyclotomic(value, n: int) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        if value.n != n:
            raise ValidationError("cyclotomic value of the wrong order")
        return value
    return Cyclotomic.from_rational(n, value)


def rotate_point(point: dict[int, object], n: int, m: int, k: int) -> dict[int, Cyclotomic]:
    """Action of t -> zeta^k t (followed by re-normalizing a_m = 1)."""
    return {
        i: Cyclotomic.zeta(n, k * (i - m)) * _as_cyclotomic(v, n)
        for i, v in point.items()
    }


def orbit_equivalent(point1: dict[int, object], point2: dict[int, object],
                     n: int, m: int) -> tuple[bool, int | None]:
    """Are two moduli points related by a root-of-unity reparametrization?

    On success the witness exponent k with point2 = rotate_point(point1, k)
    is returned alongside; k = 0 means the points are equal outright.
    """
    if set(point1) != set(point2):
        return (False, None)
    second = {i: _as_cyclotomic(v, n) for i, v in point2.items()}
    for k in range(n):
        rotated = rotate_point(point1, n, m, k)
        if all(rotated[i] == second[i] for i in rotated):
            return (True, k)
    return (False, None)


def canonical_point(point: dict[int, object], n: int, m: int) -> dict[int, Cyclotomic]:
    """Distinguished representative of the rotation orbit.

    All n rotations are compared through the coefficient vectors of their
    values in the cyclotomic basis, smallest tuple first; this is an
    arbitrary but fixed choice, enough to make equality of canonical
    points decide orbit equivalence.
    """
    indices = sorted(point)
    best = None
    best_key = None
    for k in range(n):
        rotated = rotate_point(point, n, m, k)
        key = tuple(rotated[i].coeffs for i in indices)
        if best_key is None or key < best_key:
            best, best_key = rotated, key
    return best


def equivalent_curves(
    first: PlaneCurveGerm, second: PlaneCurveGerm
) -> tuple[bool, int | None]:
    """Contact equivalence of two generic curves, with the witness exponent."""
    if first.equisingularity_type() != second.equisingularity_type():
        return (False, None)
    nf1 = normal_form(first)
    nf2 = normal_form(second)
    n, m = first.n, first.m
    return orbit_equivalent(nf1.moduli_point(), nf2.moduli_point(), n, m)
