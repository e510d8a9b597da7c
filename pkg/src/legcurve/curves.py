"""Plane curve germs x = t^n, y = sum a_i t^i and their conormal lifts.

Coefficients are exact scalars; the y-series is known below the curve's
``accuracy``.  The conormal lift adds the derivative coordinate
p = dy/dx, whose order along the curve is m - n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import InsufficientPrecisionError, ValidationError
from .series import Accuracy, TruncatedSeries, series_compose, series_nth_root, series_reverse


def default_accuracy(n: int, m: int) -> int:
    """Conductor of the plane semigroup <n, m>, raised just enough to keep
    the leading y-coefficient for very small types."""
    return max((n - 1) * (m - 1), m + 1)


class PlaneCurveGerm:
    __slots__ = ("n", "coefficients", "accuracy")

    def __init__(self, n: int, coefficients: Mapping[int, object], accuracy: Accuracy | None = None):
        if n < 2:
            raise ValidationError(f"multiplicity n must be at least 2, got {n}")
        cleaned = {e: c for e, c in coefficients.items() if c}
        if not cleaned:
            raise ValidationError("curve needs at least one non-zero y-coefficient")
        m = min(cleaned)
        if m <= n:
            raise ValidationError(f"y-order m = {m} must exceed n = {n}")
        if math.gcd(n, m) != 1:
            raise ValidationError(f"(n, m) = ({n}, {m}) must be coprime")
        if accuracy is None:
            accuracy = default_accuracy(n, m)
        if accuracy <= m:
            raise ValidationError("accuracy must exceed the y-order m")
        if any(e >= accuracy for e in cleaned):
            raise ValidationError("stored exponents must lie below the accuracy")
        self.n = n
        self.coefficients = cleaned
        self.accuracy = accuracy

    # -- inspection ---------------------------------------------------------

    @property
    def m(self) -> int:
        return min(self.coefficients)

    def coefficient(self, i: int):
        if i >= self.accuracy:
            raise InsufficientPrecisionError(
                f"coefficient a_{i} requested but the curve is only exact below {self.accuracy}"
            )
        return self.coefficients.get(i, 0)

    def in_strong_generic_position(self) -> bool:
        return self.m >= 2 * self.n + 1

    def equisingularity_type(self) -> tuple[int, int]:
        return (self.n, self.m)

    def items(self):
        return sorted(self.coefficients.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneCurveGerm):
            return NotImplemented
        return (
            self.n == other.n
            and self.coefficients == other.coefficients
            and self.accuracy == other.accuracy
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        terms = " + ".join(f"{c!r}*t^{e}" for e, c in self.items())
        return f"PlaneCurveGerm(x=t^{self.n}, y={terms}; accuracy={self.accuracy})"

    # -- derived series -------------------------------------------------------

    def x_series(self) -> TruncatedSeries:
        return TruncatedSeries.monomial(self.n, 1)

    def y_series(self) -> TruncatedSeries:
        return TruncatedSeries(dict(self.coefficients), self.accuracy)

    def p_series(self) -> TruncatedSeries:
        """The derivative coordinate p = (dy/dt)/(dx/dt) along the curve."""
        n = self.n
        acc = self.accuracy if self.accuracy == math.inf else self.accuracy - n
        coeffs = {e - n: Fraction(e, n) * c if isinstance(c, (int, Fraction)) else c * Fraction(e, n)
                  for e, c in self.coefficients.items()}
        return TruncatedSeries(coeffs, acc)

    def triple(self) -> tuple[TruncatedSeries, TruncatedSeries, TruncatedSeries]:
        return (self.x_series(), self.y_series(), self.p_series())

    # -- rebuilding -----------------------------------------------------------

    def truncate(self, accuracy: int) -> "PlaneCurveGerm":
        if accuracy <= self.m:
            raise ValidationError("truncation would discard the leading y-coefficient")
        kept = {e: c for e, c in self.coefficients.items() if e < accuracy}
        return PlaneCurveGerm(self.n, kept, min(self.accuracy, accuracy))

    def as_polynomial(self, accuracy: Accuracy) -> "PlaneCurveGerm":
        """Declare absent coefficients below ``accuracy`` to be exact zeros.

        Only sound when higher-order terms cannot influence the result the
        caller is after (for example anything read off below the conductor).
        """
        if accuracy < self.accuracy:
            raise ValidationError("use truncate to lower the accuracy")
        return PlaneCurveGerm(self.n, dict(self.coefficients), accuracy)

    def scale_y(self, scalar) -> "PlaneCurveGerm":
        if not scalar:
            raise ValidationError("scaling the y-series by zero destroys the curve")
        return PlaneCurveGerm(
            self.n, {e: scalar * c for e, c in self.coefficients.items()}, self.accuracy
        )


def curve_from_y_series(n: int, series: TruncatedSeries) -> PlaneCurveGerm:
    if not series.coeffs:
        raise ValidationError("the y-series vanishes to its stated accuracy")
    return PlaneCurveGerm(n, dict(series.coeffs), series.accuracy)


def rescale_parameter(series: TruncatedSeries, eta) -> TruncatedSeries:
    """Substitute t -> t/eta, i.e. multiply the coefficient of t^k by eta^-k."""
    return TruncatedSeries({k: v * eta ** (-k) for k, v in series.coeffs.items()}, series.accuracy)


def reparametrize(x_series: TruncatedSeries, y_series: TruncatedSeries, n: int) -> PlaneCurveGerm:
    """Normalize a parametrized plane curve (x(t), y(t)) with ord x = n and
    unit leading coefficient back to the chart x = s^n."""
    if x_series.order_lower_bound() > n or x_series.coefficient(n) != 1:
        raise ValidationError("x-series must have order n with leading coefficient 1")
    if x_series.order() != n:
        raise ValidationError("x-series must have order exactly n")
    unit = x_series.shift(-n)
    root = series_nth_root(unit, n) if unit.coeffs != {0: 1} else unit
    s_of_t = TruncatedSeries.monomial(1, 1) * root
    if s_of_t.coeffs == {1: 1}:
        new_y = y_series
    else:
        t_of_s = series_reverse(s_of_t)
        new_y = series_compose(y_series, t_of_s)
        x_back = series_compose(x_series, t_of_s)
        assert x_back.agrees_with(TruncatedSeries.monomial(n, 1)), "reparametrization failed"
    return curve_from_y_series(n, new_y)


def integer_nth_root(value: int, n: int) -> int | None:
    """Exact n-th root of a non-negative integer, or None."""
    if value < 0:
        return None
    if value in (0, 1):
        return value
    root = round(value ** (1.0 / n))
    for candidate in (root - 1, root, root + 1):
        if candidate >= 0 and candidate ** n == value:
            return candidate
    return None


def rational_nth_root(value: Fraction, n: int) -> Fraction | None:
    """Exact rational n-th root with positive sign convention, or None."""
    value = Fraction(value)
    negative = value < 0
    if negative and n % 2 == 0:
        return None
    num = integer_nth_root(abs(value.numerator), n)
    den = integer_nth_root(value.denominator, n)
    if num is None or den is None:
        return None
    root = Fraction(num, den)
    return -root if negative else root
