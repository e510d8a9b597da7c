"""Truncated power series in one variable with explicit accuracy.

A series stores finitely many exact coefficients together with an
``accuracy`` bound N: coefficients of t^k for k < N are correct, higher
ones are unknown.  ``math.inf`` accuracy marks exact polynomials.
Every operation propagates accuracy pessimistically and reading a
coefficient at or beyond the bound raises, so precision loss is never
silent.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Mapping

from .errors import InsufficientPrecisionError, ValidationError

Accuracy = int | float  # int, or math.inf for exact data


def reciprocal(value):
    """1/value without drifting into floats on integer input."""
    if isinstance(value, int):
        return Fraction(1, value)
    return 1 / value


def _check_accuracy(value: Accuracy) -> Accuracy:
    if value == math.inf:
        return math.inf
    if isinstance(value, int) and value >= 0:
        return value
    raise ValidationError(f"accuracy must be a non-negative integer or infinity, got {value!r}")


class TruncatedSeries:
    __slots__ = ("coeffs", "accuracy")

    def __init__(self, coeffs: Mapping[int, object], accuracy: Accuracy):
        self.accuracy = _check_accuracy(accuracy)
        self.coeffs: dict[int, object] = {}
        for k, v in coeffs.items():
            if k < 0:
                raise ValidationError(f"negative exponent {k}")
            if k < self.accuracy and v:
                self.coeffs[k] = v

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(accuracy: Accuracy = math.inf) -> "TruncatedSeries":
        return TruncatedSeries({}, accuracy)

    @staticmethod
    def monomial(exponent: int, coefficient: object = 1, accuracy: Accuracy = math.inf) -> "TruncatedSeries":
        return TruncatedSeries({exponent: coefficient}, accuracy)

    # -- inspection --------------------------------------------------------

    def coefficient(self, k: int):
        if k >= self.accuracy:
            raise InsufficientPrecisionError(
                f"coefficient of t^{k} requested but series is only exact below t^{self.accuracy}"
            )
        return self.coeffs.get(k, 0)

    def order(self) -> Accuracy:
        """Exact order of the series; infinity for the exact zero series."""
        if self.coeffs:
            return min(self.coeffs)
        if self.accuracy == math.inf:
            return math.inf
        raise InsufficientPrecisionError(
            f"series vanishes below t^{self.accuracy}; its order cannot be certified"
        )

    def order_lower_bound(self) -> Accuracy:
        return min(self.coeffs) if self.coeffs else self.accuracy

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_coefficient(self):
        return self.coeffs[min(self.coeffs)]

    def items(self):
        return sorted(self.coeffs.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs and self.accuracy == other.accuracy

    __hash__ = None  # type: ignore[assignment]

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Equality of all coefficients below the smaller accuracy."""
        bound = min(self.accuracy, other.accuracy)
        keys = {k for k in self.coeffs if k < bound} | {k for k in other.coeffs if k < bound}
        return all(self.coeffs.get(k, 0) == other.coeffs.get(k, 0) for k in keys)

    def __repr__(self) -> str:
        terms = [f"{v!r}*t^{k}" for k, v in self.items()]
        acc = "inf" if self.accuracy == math.inf else str(self.accuracy)
        return f"TruncatedSeries({' + '.join(terms) or '0'}; accuracy={acc})"

    # -- basic arithmetic --------------------------------------------------

    def truncate(self, accuracy: Accuracy) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, min(self.accuracy, accuracy))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries({k: -v for k, v in self.coeffs.items()}, self.accuracy)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        merged = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = merged.get(k, 0) + v
            if s:
                merged[k] = s
            else:
                merged.pop(k, None)
        return TruncatedSeries(merged, min(self.accuracy, other.accuracy))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, scalar) -> "TruncatedSeries":
        if not scalar:
            return TruncatedSeries({}, self.accuracy)
        return TruncatedSeries({k: scalar * v for k, v in self.coeffs.items()}, self.accuracy)

    def map_coefficients(self, fn: Callable[[object], object]) -> "TruncatedSeries":
        return TruncatedSeries({k: fn(v) for k, v in self.coeffs.items()}, self.accuracy)

    def shift(self, offset: int) -> "TruncatedSeries":
        """Multiply by t^offset; offset may be negative if no exponent drops below zero."""
        if self.coeffs and min(self.coeffs) + offset < 0:
            raise ValidationError("shift would create negative exponents")
        acc = self.accuracy if self.accuracy == math.inf else max(self.accuracy + offset, 0)
        return TruncatedSeries({k + offset: v for k, v in self.coeffs.items()}, acc)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if (not self.coeffs and self.accuracy == math.inf) or (
            not other.coeffs and other.accuracy == math.inf
        ):
            return TruncatedSeries({}, math.inf)
        acc = min(
            self.accuracy + other.order_lower_bound(),
            other.accuracy + self.order_lower_bound(),
        )
        if acc != math.inf:
            acc = int(acc)
        out: dict[int, object] = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = k1 + k2
                if k < acc:
                    s = out.get(k, 0) + v1 * v2
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return TruncatedSeries(out, acc)

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if exponent < 0:
            raise ValidationError("negative series powers are not supported")
        result = TruncatedSeries.monomial(0, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def derivative(self) -> "TruncatedSeries":
        acc = self.accuracy if self.accuracy == math.inf else max(self.accuracy - 1, 0)
        return TruncatedSeries({k - 1: k * v for k, v in self.coeffs.items() if k}, acc)


# -- composition and inversion ---------------------------------------------


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """outer(inner); requires order(inner) >= 1."""
    if inner.order_lower_bound() < 1:
        raise ValidationError("inner series must have positive order")
    if not inner.coeffs:
        # outer evaluated at something indistinguishable from 0.
        acc = min(outer.accuracy, inner.accuracy)
        const = outer.coeffs.get(0, 0)
        return TruncatedSeries({0: const} if const else {}, acc)
    v_inner = min(inner.coeffs)
    candidates = [math.inf]
    if outer.accuracy != math.inf:
        candidates.append(outer.accuracy * v_inner)
    if inner.accuracy != math.inf:
        positive = [k for k in outer.coeffs if k >= 1]
        if outer.accuracy != math.inf:
            positive.append(int(outer.accuracy))
        if positive:
            candidates.append(inner.accuracy + (min(positive) - 1) * v_inner)
    acc = min(candidates)
    result = TruncatedSeries.zero(acc)
    power = TruncatedSeries.monomial(0, 1)
    last = 0
    for k in sorted(outer.coeffs):
        if acc != math.inf and k * v_inner >= acc:
            break
        for _ in range(k - last):
            power = (power * inner).truncate(acc)
        last = k
        result = result + power.scale(outer.coeffs[k])
    return result.truncate(acc)


def series_inverse_unit(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with invertible constant term."""
    c0 = f.coeffs.get(0, 0)
    if not c0:
        raise ValidationError("series has no invertible constant term")
    if f.accuracy == math.inf and set(f.coeffs) == {0}:
        return TruncatedSeries({0: reciprocal(c0)}, math.inf)
    if f.accuracy == math.inf:
        raise ValidationError("inverse of a non-constant polynomial needs a finite accuracy; truncate first")
    n = int(f.accuracy)
    inv0 = reciprocal(c0)
    out: dict[int, object] = {0: inv0}
    for k in range(1, n):
        s = 0
        for i, fi in f.coeffs.items():
            if 1 <= i <= k:
                term = out.get(k - i, 0)
                if term:
                    s = s + fi * term
        if s:
            out[k] = -inv0 * s
    return TruncatedSeries(out, n)


def series_reverse(g: TruncatedSeries, accuracy: Accuracy | None = None) -> TruncatedSeries:
    """Compositional inverse h with g(h) = h(g) = t.

    Requires order(g) = 1 with invertible leading coefficient.  A finite
    target accuracy must be available (from g or the argument).
    """
    if g.order_lower_bound() < 1 or 1 not in g.coeffs:
        raise ValidationError("series must have order exactly 1 to be reversed")
    acc = g.accuracy if accuracy is None else min(g.accuracy, accuracy)
    if acc == math.inf:
        raise ValidationError("reversal of an exact polynomial needs an explicit finite accuracy")
    acc = int(acc)
    g = g.truncate(acc)
    g1 = g.coeffs[1]
    h = TruncatedSeries({1: reciprocal(g1)}, 2)
    precision = 2
    while precision < acc:
        precision = min(2 * precision, acc)
        h = TruncatedSeries(h.coeffs, precision)
        composed = series_compose(g.truncate(precision), h)
        residual = composed - TruncatedSeries.monomial(1, 1, precision)
        if residual.is_zero():
            continue
        deriv = series_compose(g.derivative().truncate(precision), h)
        correction = residual * series_inverse_unit(deriv.truncate(precision))
        h = (h - correction).truncate(precision)
    check = series_compose(g, h)
    assert check.agrees_with(TruncatedSeries.monomial(1, 1)), "reversion failed to compose back"
    return h


def series_nth_root(f: TruncatedSeries, n: int) -> TruncatedSeries:
    """The unique n-th root with constant term 1 of a unit series f = 1 + ...

    Solved through the first-order relation n*f*r' = f'*r, one coefficient
    at a time; scalars must support exact division by integers.
    """
    if n < 1:
        raise ValidationError("root index must be a positive integer")
    if f.coeffs.get(0, 0) != 1:
        raise ValidationError("n-th roots are only taken of unit series with constant term 1")
    if f.accuracy == math.inf and set(f.coeffs) == {0}:
        return TruncatedSeries({0: 1}, math.inf)
    if f.accuracy == math.inf:
        raise ValidationError("root of a non-trivial polynomial needs a finite accuracy; truncate first")
    acc = int(f.accuracy)
    root: dict[int, object] = {0: 1}
    fprime = {k - 1: k * v for k, v in f.coeffs.items() if k}
    for k in range(1, acc):
        # coefficient of t^(k-1) in f'*r - n*f*r' using only known root terms
        s = 0
        for i, fv in fprime.items():
            term = root.get(k - 1 - i, 0)
            if term:
                s = s + fv * term
        for i, fv in f.coeffs.items():
            if i >= 1:
                j = k - i
                if 1 <= j < k:
                    term = root.get(j, 0)
                    if term:
                        s = s - fv * (n * j) * term
        value = s * Fraction(1, n * k)
        if value:
            root[k] = value
    result = TruncatedSeries(root, acc)
    assert (result ** n).agrees_with(f), "n-th root failed to recompose"
    return result
