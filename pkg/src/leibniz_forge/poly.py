"""Sparse multivariate polynomials over the rationals.

Terms map exponent tuples to nonzero Fraction coefficients; the stored term
list is sorted, so equal polynomials are equal values. The variable count is
fixed per polynomial and enforced on every operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .linalg import Q, Scalar, as_q

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class Poly:
    nvars: int
    terms: tuple[tuple[Monomial, Fraction], ...]

    @staticmethod
    def from_dict(nvars: int, d: Mapping[Monomial, Fraction | int]) -> "Poly":
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in d.items():
            if len(mono) != nvars or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent tuple {mono!r} for {nvars} variables")
            c = as_q(coeff)
            if c != 0:
                clean[tuple(mono)] = c
        return Poly(nvars, tuple(sorted(clean.items())))

    @staticmethod
    def zero(nvars: int) -> "Poly":
        return Poly(nvars, ())

    @staticmethod
    def const(nvars: int, c: Scalar) -> "Poly":
        return Poly.from_dict(nvars, {(0,) * nvars: as_q(c)})

    @staticmethod
    def var(nvars: int, i: int) -> "Poly":
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range")
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return Poly(nvars, ((mono, Q(1)),))

    @staticmethod
    def monomial(nvars: int, mono: Monomial, coeff: Scalar) -> "Poly":
        return Poly.from_dict(nvars, {tuple(mono): as_q(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def _require_same(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    def __add__(self, other: "Poly") -> "Poly":
        self._require_same(other)
        d = dict(self.terms)
        for mono, coeff in other.terms:
            d[mono] = d.get(mono, Q(0)) + coeff
        return Poly.from_dict(self.nvars, d)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, tuple((m, -c) for m, c in self.terms))

    def __mul__(self, other: "Poly | Scalar") -> "Poly":
        if isinstance(other, Poly):
            self._require_same(other)
            d: dict[Monomial, Fraction] = {}
            for m1, c1 in self.terms:
                for m2, c2 in other.terms:
                    mono = tuple(a + b for a, b in zip(m1, m2))
                    d[mono] = d.get(mono, Q(0)) + c1 * c2
            return Poly.from_dict(self.nvars, d)
        c = as_q(other)
        if c == 0:
            return Poly.zero(self.nvars)
        return Poly(self.nvars, tuple((m, c * co) for m, co in self.terms))

    def __rmul__(self, other: Scalar) -> "Poly":
        return self * other

    def partial(self, i: int) -> "Poly":
        """Partial derivative with respect to variable i."""
        if not 0 <= i < self.nvars:
            raise ValueError(f"variable index {i} out of range")
        d: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms:
            e = mono[i]
            if e == 0:
                continue
            lowered = tuple(x - 1 if j == i else x for j, x in enumerate(mono))
            d[lowered] = d.get(lowered, Q(0)) + coeff * e
        return Poly.from_dict(self.nvars, d)

    def constant_term(self) -> Fraction:
        for mono, coeff in self.terms:
            if all(e == 0 for e in mono):
                return coeff
        return Q(0)
