"""Cyclotomic polynomials, root-of-unity detection and exact arithmetic in
cyclotomic fields."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional

from .errors import HypothesisViolation, PrecisionExhausted
from .intervals import ComplexBox, Interval
from .ratpoly import RatPoly
from .real import cos_turns, ladder, sin_turns
from .roots import AlgebraicRoot


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=512)
def cyclotomic(n: int) -> RatPoly:
    """The n-th cyclotomic polynomial, by dividing z^n - 1 by lower ones."""
    if n < 1:
        raise ValueError("n must be positive")
    p = RatPoly.monomial(n) - 1
    for d in range(1, n):
        if n % d == 0:
            p = p // cyclotomic(d)
    return p


def orders_with_phi(degree: int) -> list:
    """All n with phi(n) == degree (phi(n) >= sqrt(n/2) bounds the search)."""
    return [n for n in range(1, 2 * degree * degree + 3) if euler_phi(n) == degree]


def unit_box(k: int, n: int, bits: int) -> ComplexBox:
    t = Interval.exact(Fraction(k, n))
    return ComplexBox(cos_turns(t, bits), sin_turns(t, bits))


def root_of_unity_order(r: AlgebraicRoot) -> Optional[tuple]:
    """(k, n) with r = exp(2 pi i k / n), gcd(k, n) = 1, or None.

    Raises HypothesisViolation when |r| != 1.
    """
    if r.is_rational:
        if abs(r.value) != 1:
            raise HypothesisViolation("root_of_unity_order needs a number of modulus 1")
        return (0, 1) if r.value == 1 else (1, 2)
    f = r.defining
    # |r| = 1 puts 1/r = conj(r) among the roots, so f must be self-reciprocal;
    # an enclosure of |r|^2 away from 1 also rules it out
    rev = f.reversed()
    if rev != f and rev != -f:
        raise HypothesisViolation("root_of_unity_order needs a number of modulus 1")
    if not r.enclosure(64).abs2().contains(1):
        raise HypothesisViolation("root_of_unity_order needs a number of modulus 1")
    match = None
    for n in orders_with_phi(f.degree):
        if cyclotomic(n).primitive() == f:
            match = n
            break
    if match is None:
        return None
    ks = [k for k in range(match) if gcd(k, match) == 1]
    for bits in ladder(None, start=16):
        e = r.enclosure(bits)
        ks = [k for k in ks if unit_box(k, match, bits).intersects(e)]
        if len(ks) == 1:
            return ks[0], match
    raise PrecisionExhausted("could not pin the root of unity")


@dataclass(frozen=True)
class CyclotomicNumber:
    """An element of Q(zeta_M), stored as a polynomial in zeta reduced mod Phi_M.

    ``M`` is kept a multiple of 4 so that i = zeta^(M/4) is available.
    """

    M: int
    poly: RatPoly

    @classmethod
    def zero(cls, M: int) -> "CyclotomicNumber":
        return cls(_field_order(M), RatPoly())

    @classmethod
    def rational(cls, M: int, q) -> "CyclotomicNumber":
        return cls(_field_order(M), RatPoly([q]))

    @classmethod
    def zeta_power(cls, M: int, k: int) -> "CyclotomicNumber":
        M = _field_order(M)
        return cls(M, RatPoly.monomial(k % M) % cyclotomic(M))

    @classmethod
    def gaussian(cls, M: int, re, im) -> "CyclotomicNumber":
        M = _field_order(M)
        return cls.rational(M, re) + cls.zeta_power(M, M // 4) * cls.rational(M, im)

    @classmethod
    def cos_turns(cls, M: int, k: int) -> "CyclotomicNumber":
        """cos(2 pi k / M)."""
        z = cls.zeta_power(M, k) + cls.zeta_power(M, -k)
        return z * cls.rational(M, Fraction(1, 2))

    @classmethod
    def sin_turns(cls, M: int, k: int) -> "CyclotomicNumber":
        """sin(2 pi k / M) = (zeta^k - zeta^-k) * (-i) / 2."""
        M = _field_order(M)
        z = cls.zeta_power(M, k) - cls.zeta_power(M, -k)
        return z * cls.zeta_power(M, 3 * M // 4) * cls.rational(M, Fraction(1, 2))

    def _check(self, other: "CyclotomicNumber"):
        if other.M != self.M:
            raise ValueError("cyclotomic numbers from different fields")

    def __add__(self, other):
        self._check(other)
        return CyclotomicNumber(self.M, self.poly + other.poly)

    def __sub__(self, other):
        self._check(other)
        return CyclotomicNumber(self.M, self.poly - other.poly)

    def __neg__(self):
        return CyclotomicNumber(self.M, -self.poly)

    def __mul__(self, other):
        if not isinstance(other, CyclotomicNumber):
            return CyclotomicNumber(self.M, self.poly * Fraction(other))
        self._check(other)
        return CyclotomicNumber(self.M, (self.poly * other.poly) % cyclotomic(self.M))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def enclosure(self, bits: int) -> ComplexBox:
        acc = ComplexBox.exact(0)
        for j, c in enumerate(self.poly.coeffs):
            if c:
                acc = acc + unit_box(j, self.M, bits + 8) * c
        return acc.rounded(bits + 4)

    def real_sign(self, budget: Optional[int] = None) -> int:
        """Sign of a real element; exact zero test first."""
        if self.is_zero():
            return 0
        for bits in ladder(budget):
            s = self.enclosure(bits).re.sign()
            if s:
                return s
        raise PrecisionExhausted("sign of cyclotomic number undecided")


def _field_order(M: int) -> int:
    return M if M % 4 == 0 else M * 4 // gcd(M, 4)
