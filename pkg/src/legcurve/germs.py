"""Function germs in three variables (x, y, p) truncated by weighted order.

The variables carry positive integer weights; for a curve of type (n, m)
these are the orders (n, m, m-n) of x, y and the derivative coordinate p
along the parametrized curve, so the weighted valuation of a monomial is
exactly the order of its restriction to the curve.  A germ stores exact
coefficients for monomials of weighted valuation below ``accuracy``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

from .errors import InsufficientPrecisionError, ValidationError
from .series import Accuracy, TruncatedSeries, _check_accuracy, reciprocal

Monomial = tuple[int, int, int]
AXES = ("x", "y", "p")


def contact_weights(n: int, m: int) -> tuple[int, int, int]:
    if not (0 < n < m):
        raise ValidationError(f"need 0 < n < m, got ({n}, {m})")
    return (n, m, m - n)


class Germ:
    __slots__ = ("weights", "coeffs", "accuracy")

    def __init__(self, weights: tuple[int, int, int], coeffs: Mapping[Monomial, object], accuracy: Accuracy):
        if len(weights) != 3 or any(w <= 0 for w in weights):
            raise ValidationError(f"weights must be three positive integers, got {weights!r}")
        self.weights = tuple(weights)
        self.accuracy = _check_accuracy(accuracy)
        self.coeffs: dict[Monomial, object] = {}
        for mono, value in coeffs.items():
            if any(e < 0 for e in mono):
                raise ValidationError(f"negative exponent in monomial {mono}")
            if value and self.valuation_of(mono) < accuracy:
                self.coeffs[mono] = value

    # -- structure ---------------------------------------------------------

    def valuation_of(self, mono: Monomial) -> int:
        return sum(e * w for e, w in zip(mono, self.weights))

    @staticmethod
    def zero(weights: tuple[int, int, int], accuracy: Accuracy = math.inf) -> "Germ":
        return Germ(weights, {}, accuracy)

    @staticmethod
    def constant(weights: tuple[int, int, int], value, accuracy: Accuracy = math.inf) -> "Germ":
        return Germ(weights, {(0, 0, 0): value}, accuracy)

    @staticmethod
    def variable(weights: tuple[int, int, int], axis: str, accuracy: Accuracy = math.inf) -> "Germ":
        mono = [0, 0, 0]
        mono[AXES.index(axis)] = 1
        return Germ(weights, {tuple(mono): 1}, accuracy)

    def coefficient(self, mono: Monomial):
        if self.valuation_of(mono) >= self.accuracy:
            raise InsufficientPrecisionError(
                f"coefficient of {mono} has weighted order >= accuracy {self.accuracy}"
            )
        return self.coeffs.get(mono, 0)

    def valuation_lower_bound(self) -> Accuracy:
        if self.coeffs:
            return min(self.valuation_of(mono) for mono in self.coeffs)
        return self.accuracy

    def valuation(self) -> Accuracy:
        if self.coeffs:
            return min(self.valuation_of(mono) for mono in self.coeffs)
        if self.accuracy == math.inf:
            return math.inf
        raise InsufficientPrecisionError("germ vanishes to stated accuracy; valuation unknown")

    def is_zero(self) -> bool:
        return not self.coeffs

    def in_maximal_ideal(self) -> bool:
        """True when the germ vanishes at the origin."""
        if self.accuracy <= 0:
            raise InsufficientPrecisionError("accuracy 0 germ: value at origin unknown")
        return (0, 0, 0) not in self.coeffs

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: (self.valuation_of(kv[0]), kv[0]))

    def agrees_with(self, other: "Germ") -> bool:
        self._check_compatible(other)
        bound = min(self.accuracy, other.accuracy)
        keys = {k for k in self.coeffs if self.valuation_of(k) < bound}
        keys |= {k for k in other.coeffs if other.valuation_of(k) < bound}
        return all(self.coeffs.get(k, 0) == other.coeffs.get(k, 0) for k in keys)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Germ):
            return NotImplemented
        return (
            self.weights == other.weights
            and self.coeffs == other.coeffs
            and self.accuracy == other.accuracy
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        def fmt(mono: Monomial, value) -> str:
            vars_part = "".join(
                f"{axis}^{e}" if e > 1 else axis for axis, e in zip(AXES, mono) if e
            )
            if not vars_part:
                return repr(value)
            return f"{value!r}*{vars_part}" if value != 1 else vars_part

        body = " + ".join(fmt(mn, v) for mn, v in self.items()) or "0"
        acc = "inf" if self.accuracy == math.inf else str(self.accuracy)
        return f"Germ({body}; accuracy={acc})"

    def _check_compatible(self, other: "Germ") -> None:
        if self.weights != other.weights:
            raise ValidationError("germs live in differently weighted rings")

    # -- arithmetic ----------------------------------------------------------

    def truncate(self, accuracy: Accuracy) -> "Germ":
        return Germ(self.weights, self.coeffs, min(self.accuracy, accuracy))

    def __neg__(self) -> "Germ":
        return Germ(self.weights, {k: -v for k, v in self.coeffs.items()}, self.accuracy)

    def __add__(self, other: "Germ") -> "Germ":
        if not isinstance(other, Germ):
            return NotImplemented
        self._check_compatible(other)
        merged = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = merged.get(k, 0) + v
            if s:
                merged[k] = s
            else:
                merged.pop(k, None)
        return Germ(self.weights, merged, min(self.accuracy, other.accuracy))

    def __sub__(self, other: "Germ") -> "Germ":
        return self + (-other)

    def scale(self, scalar) -> "Germ":
        if not scalar:
            return Germ(self.weights, {}, self.accuracy)
        return Germ(self.weights, {k: scalar * v for k, v in self.coeffs.items()}, self.accuracy)

    def __mul__(self, other: "Germ") -> "Germ":
        if not isinstance(other, Germ):
            return NotImplemented
        self._check_compatible(other)
        if (not self.coeffs and self.accuracy == math.inf) or (
            not other.coeffs and other.accuracy == math.inf
        ):
            return Germ.zero(self.weights)
        acc = min(
            self.accuracy + other.valuation_lower_bound(),
            other.accuracy + self.valuation_lower_bound(),
        )
        out: dict[Monomial, object] = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                key = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                if self.valuation_of(key) < acc:
                    s = out.get(key, 0) + v1 * v2
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        return Germ(self.weights, out, acc)

    def __pow__(self, exponent: int) -> "Germ":
        if exponent < 0:
            raise ValidationError("negative germ powers are not supported")
        result = Germ.constant(self.weights, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def partial(self, axis: str) -> "Germ":
        idx = AXES.index(axis)
        weight = self.weights[idx]
        acc = self.accuracy if self.accuracy == math.inf else max(self.accuracy - weight, 0)
        out: dict[Monomial, object] = {}
        for mono, value in self.coeffs.items():
            if mono[idx]:
                key = list(mono)
                key[idx] -= 1
                out[tuple(key)] = mono[idx] * value
        return Germ(self.weights, out, acc)

    # -- p-power decomposition (used by the Cauchy solver) --------------------

    def p_parts(self) -> dict[int, "Germ"]:
        """Split into coefficients of powers of p (each a germ in x, y only)."""
        wp = self.weights[2]
        parts: dict[int, dict[Monomial, object]] = {}
        for (i, j, l), value in self.coeffs.items():
            parts.setdefault(l, {})[(i, j, 0)] = value
        out: dict[int, Germ] = {}
        degrees = set(parts)
        if self.accuracy != math.inf:
            degrees |= set(range(0, int(self.accuracy) // wp + 1))
        for l in degrees:
            acc = self.accuracy if self.accuracy == math.inf else self.accuracy - l * wp
            out[l] = Germ(self.weights, parts.get(l, {}), max(acc, 0) if acc != math.inf else acc)
        return out

    @staticmethod
    def from_p_parts(weights: tuple[int, int, int], parts: Mapping[int, "Germ"]) -> "Germ":
        wp = weights[2]
        coeffs: dict[Monomial, object] = {}
        acc: Accuracy = math.inf
        for l, part in parts.items():
            part_acc = part.accuracy if part.accuracy == math.inf else part.accuracy + l * wp
            acc = min(acc, part_acc)
            for (i, j, zero), value in part.coeffs.items():
                if zero:
                    raise ValidationError("p-part germs must not contain p")
                coeffs[(i, j, l)] = value
        return Germ(weights, coeffs, acc)


# -- unit inversion -----------------------------------------------------------


def invert_unit(g: Germ, accuracy: Accuracy | None = None) -> Germ:
    """Inverse of a germ with invertible value at the origin."""
    acc = g.accuracy if accuracy is None else min(g.accuracy, accuracy)
    c0 = g.coeffs.get((0, 0, 0), 0)
    if not c0:
        raise ValidationError("germ vanishes at the origin; it is not a unit")
    rest = g - Germ.constant(g.weights, c0, g.accuracy)
    if rest.is_zero():
        return Germ.constant(g.weights, reciprocal(c0), acc)
    if acc == math.inf:
        raise ValidationError("inverting a non-constant unit needs a finite accuracy; truncate first")
    inv_c0 = reciprocal(c0)
    w = rest.scale(-inv_c0).truncate(acc)
    result = Germ.constant(g.weights, 1, acc)
    power = Germ.constant(g.weights, 1, acc)
    v = w.valuation_lower_bound()
    if v <= 0:
        raise ValidationError("unit remainder must have positive weighted order")
    k = 1
    while k * v < acc:
        power = (power * w).truncate(acc)
        if power.is_zero():
            break
        result = result + power
        k += 1
    return result.scale(inv_c0)


# -- substitution -------------------------------------------------------------


def _substitution_accuracy(
    g: Germ,
    values,   # three series-or-germ objects already substituted for x, y, p
    orders,   # lower bounds for their orders/valuations
    accs,     # their accuracies
) -> Accuracy:
    """Conservative accuracy for g(values); orders measured in the target grading."""
    ratios = []
    for w, v in zip(g.weights, orders):
        if v != math.inf:
            ratios.append(Fraction(int(v), w))
    rho = min(ratios) if ratios else None
    candidates: list[Accuracy] = [math.inf]
    if g.accuracy != math.inf:
        if rho is None:
            candidates.append(g.accuracy)
        else:
            candidates.append(math.ceil(g.accuracy * rho))
    for mono in g.coeffs:
        base = sum(e * v for e, v in zip(mono, orders) if v != math.inf)
        for idx in range(3):
            if mono[idx] and accs[idx] != math.inf:
                v_idx = orders[idx] if orders[idx] != math.inf else 0
                candidates.append(accs[idx] + base - v_idx)
    return min(candidates)


def substitute(g: Germ, x_value: Germ, y_value: Germ, p_value: Germ) -> Germ:
    """g(x_value, y_value, p_value) for germ arguments of positive weighted order."""
    values = (x_value, y_value, p_value)
    for value in values:
        g._check_compatible(value)
        if value.valuation_lower_bound() < 1:
            raise ValidationError("substituted germs must vanish at the origin")
    orders = tuple(v.valuation_lower_bound() for v in values)
    accs = tuple(v.accuracy for v in values)
    acc = _substitution_accuracy(g, values, orders, accs)
    result = Germ.zero(g.weights, acc)
    powers: list[dict[int, Germ]] = [
        {0: Germ.constant(g.weights, 1)} for _ in range(3)
    ]

    def power(idx: int, e: int) -> Germ:
        cache = powers[idx]
        while e not in cache:
            top = max(cache)
            cache[top + 1] = (cache[top] * values[idx]).truncate(acc)
        return cache[e]

    for mono, coeff in g.items():
        term = Germ.constant(g.weights, coeff)
        for idx in range(3):
            if mono[idx]:
                term = (term * power(idx, mono[idx])).truncate(acc)
        result = result + term
    return result.truncate(acc)


def evaluate_on_series(
    g: Germ,
    x_series: TruncatedSeries,
    y_series: TruncatedSeries,
    p_series: TruncatedSeries,
) -> TruncatedSeries:
    """Restrict the germ along a parametrized triple of series in t."""
    values = (x_series, y_series, p_series)
    orders = tuple(s.order_lower_bound() for s in values)
    if any(v < 1 for v in orders):
        raise ValidationError("triple components must have positive order")
    accs = tuple(s.accuracy for s in values)
    acc = _substitution_accuracy(g, values, orders, accs)
    result = TruncatedSeries.zero(acc)
    powers: list[dict[int, TruncatedSeries]] = [
        {0: TruncatedSeries.monomial(0, 1)} for _ in range(3)
    ]

    def power(idx: int, e: int) -> TruncatedSeries:
        cache = powers[idx]
        while e not in cache:
            top = max(cache)
            cache[top + 1] = (cache[top] * values[idx]).truncate(acc)
        return cache[e]

    for mono, coeff in g.items():
        term = TruncatedSeries.monomial(0, coeff)
        for idx in range(3):
            if mono[idx]:
                term = (term * power(idx, mono[idx])).truncate(acc)
        result = result + term
    return result.truncate(acc)
