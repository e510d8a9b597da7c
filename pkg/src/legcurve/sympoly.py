"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a mapping {exponent tuple: coefficient} over a fixed,
ordered tuple of generator names.  This is deliberately small: ring
operations, partial derivatives and substitution are all the symbolic
layer requires.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ValidationError

Exponents = tuple[int, ...]
Coefficient = Fraction | int


class Poly:
    __slots__ = ("gens", "terms")

    def __init__(self, gens: tuple[str, ...], terms: Mapping[Exponents, Coefficient]):
        self.gens = gens
        self.terms: dict[Exponents, Coefficient] = {e: c for e, c in terms.items() if c}

    # -- constructors ---------------------------------------------------

    @staticmethod
    def const(gens: tuple[str, ...], value: Coefficient) -> "Poly":
        zero = (0,) * len(gens)
        return Poly(gens, {zero: value} if value else {})

    @staticmethod
    def variable(gens: tuple[str, ...], name: str) -> "Poly":
        exps = [0] * len(gens)
        exps[gens.index(name)] = 1
        return Poly(gens, {tuple(exps): 1})

    # -- ring structure --------------------------------------------------

    def _coerce(self, other: object) -> "Poly | None":
        if isinstance(other, Poly):
            if other.gens != self.gens:
                raise ValidationError("mixed generator tuples")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.gens, other)
        return None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self.terms == coerced.terms

    def __hash__(self) -> int:
        return hash((self.gens, frozenset(self.terms.items())))

    def __neg__(self) -> "Poly":
        return Poly(self.gens, {e: -c for e, c in self.terms.items()})

    def __add__(self, other: object) -> "Poly":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        merged = dict(self.terms)
        for e, c in coerced.terms.items():
            merged[e] = merged.get(e, 0) + c
        return Poly(self.gens, merged)

    __radd__ = __add__

    def __sub__(self, other: object) -> "Poly":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self + (-coerced)

    def __rsub__(self, other: object) -> "Poly":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return coerced + (-self)

    def __mul__(self, other: object) -> "Poly":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        product: dict[Exponents, Coefficient] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in coerced.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                product[key] = product.get(key, 0) + c1 * c2
        return Poly(self.gens, product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValidationError("negative powers are not polynomials")
        result = Poly.const(self.gens, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- calculus and evaluation ------------------------------------------

    def diff(self, name: str) -> "Poly":
        idx = self.gens.index(name)
        out: dict[Exponents, Coefficient] = {}
        for e, c in self.terms.items():
            if e[idx]:
                key = e[:idx] + (e[idx] - 1,) + e[idx + 1:]
                out[key] = out.get(key, 0) + c * e[idx]
        return Poly(self.gens, out)

    def substitute(self, assignment: Mapping[str, Coefficient]) -> "Poly":
        """Replace some generators by exact scalars; others stay symbolic."""
        indices = {self.gens.index(name): Fraction(v) for name, v in assignment.items()}
        out: dict[Exponents, Coefficient] = {}
        for e, c in self.terms.items():
            scale: Coefficient = c
            key = list(e)
            for idx, value in indices.items():
                scale = scale * value ** e[idx]
                key[idx] = 0
            tkey = tuple(key)
            out[tkey] = out.get(tkey, 0) + scale
        return Poly(self.gens, out)

    def as_constant(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        zero = (0,) * len(self.gens)
        if set(self.terms) != {zero}:
            raise ValidationError("polynomial is not constant")
        return Fraction(self.terms[zero])

    def degree_in(self, name: str) -> int:
        idx = self.gens.index(name)
        return max((e[idx] for e in self.terms), default=0)

    def exponents(self) -> Iterable[Exponents]:
        return self.terms.keys()

    def __repr__(self) -> str:
        if not self.terms:
            return "Poly(0)"
        pieces = []
        for e in sorted(self.terms):
            factors = []
            for name, k in zip(self.gens, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            coeff = self.terms[e]
            if factors:
                head = "" if coeff == 1 else ("-" if coeff == -1 else f"{coeff}*")
                pieces.append(head + "*".join(factors))
            else:
                pieces.append(str(coeff))
        return "Poly(" + " + ".join(pieces) + ")"
