"""Univariate polynomials over the rationals, lowest degree first."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import sympy

_Z = sympy.Symbol("z")


def _strip(coeffs: Sequence[Fraction]) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class RatPoly:
    coeffs: tuple

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _strip(Fraction(c) for c in coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "RatPoly":
        return cls([0] * degree + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "RatPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RatPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = RatPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "RatPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        inv = 1 / other.lead
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return RatPoly(quot), RatPoly(rem[:dq])

    def __floordiv__(self, other):
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_poly(other))[1]

    def monic(self) -> "RatPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def primitive(self) -> "RatPoly":
        """Integer coefficients with content 1 and positive leading term."""
        if self.is_zero():
            return self
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints)
        if ints[-1] < 0:
            g = -g
        return RatPoly(Fraction(i, g) for i in ints)

    def derivative(self) -> "RatPoly":
        return RatPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def gcd(self, other: "RatPoly") -> "RatPoly":
        a, b = self, _as_poly(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree(self) -> "RatPoly":
        return (self // self.gcd(self.derivative())).monic()

    def reversed(self) -> "RatPoly":
        """z^deg * p(1/z)."""
        return RatPoly(reversed(self.coeffs))

    def compose_scale(self, t) -> "RatPoly":
        """p(t*z)."""
        t = Fraction(t)
        return RatPoly(c * t ** i for i, c in enumerate(self.coeffs))

    def to_sympy(self, var=_Z) -> sympy.Poly:
        return sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                           for c in reversed(self.coeffs)] or [0], var, domain="QQ")

    @classmethod
    def from_sympy(cls, p) -> "RatPoly":
        p = sympy.Poly(p, _Z) if not isinstance(p, sympy.Poly) else p
        return cls(Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs()))

    def factor(self) -> list:
        """Irreducible factors over Q as (primitive factor, multiplicity)."""
        if self.degree < 1:
            return []
        _, facs = self.to_sympy().factor_list()
        return [(RatPoly.from_sympy(f).primitive(), m) for f, m in facs]

    def is_irreducible(self) -> bool:
        return self.degree >= 1 and self.to_sympy().is_irreducible

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if mono and abs(c) == 1:
                coeff = "-" if c < 0 else "+"
            else:
                coeff = f"{'-' if c < 0 else '+'}{abs(c)}" + ("*" if mono else "")
            terms.append(coeff + mono)
        s = " ".join(terms)
        return s[1:] if s.startswith("+") else s

    def __repr__(self):
        return f"RatPoly({[str(c) for c in self.coeffs]})"


def _as_poly(x) -> RatPoly:
    if isinstance(x, RatPoly):
        return x
    return RatPoly([x])


def resultant_in_x(p: RatPoly, q_bivariate) -> RatPoly:
    """Res_x(p(x), q(x, t)) as a polynomial in t.

    ``q_bivariate`` is a sympy expression in the symbols ``x`` and ``t``.
    """
    x, t = sympy.symbols("x t")
    res = sympy.resultant(p.to_sympy(x).as_expr(), q_bivariate, x)
    return RatPoly.from_sympy(sympy.Poly(sympy.expand(res), t))


def bivariate_symbols():
    return sympy.symbols("x t")
