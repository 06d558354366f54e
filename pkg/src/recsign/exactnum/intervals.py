"""Closed intervals and complex boxes with rational endpoints.

Products and powers grow denominators quickly, so operations accept an
optional ``bits`` argument that rounds endpoints outward to dyadic rationals
with that many fractional bits. Rounding always widens, never narrows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, ceil
from typing import Optional, Union

Number = Union[int, Fraction]


def round_down(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(floor(q * scale), scale)


def round_up(q: Fraction, bits: int) -> Fraction:
    scale = 1 << bits
    return Fraction(ceil(q * scale), scale)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, q: Number) -> "Interval":
        q = Fraction(q)
        return cls(q, q)

    @classmethod
    def hull(cls, *values: Number) -> "Interval":
        vals = [Fraction(v) for v in values]
        return cls(min(vals), max(vals))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def rounded(self, bits: Optional[int]) -> "Interval":
        if bits is None:
            return self
        return Interval(round_down(self.lo, bits), round_up(self.hi, bits))

    def contains(self, q) -> bool:
        if isinstance(q, Interval):
            return self.lo <= q.lo and q.hi <= self.hi
        return self.lo <= q <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Interval") -> "Interval":
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def sign(self) -> Optional[int]:
        """+1 / -1 when the interval excludes zero, 0 for [0, 0], else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        if self.lo == self.hi == 0:
            return 0
        return None

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __add__(self, other):
        other = _as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_interval(other)
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return _as_interval(other) - self

    def __mul__(self, other):
        other = _as_interval(other)
        if self.is_exact and other.is_exact:
            return Interval.exact(self.lo * other.lo)
        p = (self.lo * other.lo, self.lo * other.hi,
             self.hi * other.lo, self.hi * other.hi)
        return Interval(min(p), max(p))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_interval(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        return self * Interval(1 / other.hi, 1 / other.lo)

    def __rtruediv__(self, other):
        return _as_interval(other) / self

    def abs(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0), max(-self.lo, self.hi))

    def square(self) -> "Interval":
        a = self.abs()
        return Interval(a.lo * a.lo, a.hi * a.hi)

    def __repr__(self):
        if self.is_exact:
            return f"[{self.lo}]"
        return f"[{float(self.lo):.6g}, {float(self.hi):.6g}]"


def _as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.exact(x)


@dataclass(frozen=True)
class ComplexBox:
    re: Interval
    im: Interval

    @classmethod
    def exact(cls, re: Number, im: Number = 0) -> "ComplexBox":
        return cls(Interval.exact(re), Interval.exact(im))

    @classmethod
    def from_corners(cls, re_lo, re_hi, im_lo, im_hi) -> "ComplexBox":
        return cls(Interval(Fraction(re_lo), Fraction(re_hi)),
                   Interval(Fraction(im_lo), Fraction(im_hi)))

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    @property
    def is_exact(self) -> bool:
        return self.re.is_exact and self.im.is_exact

    def rounded(self, bits: Optional[int]) -> "ComplexBox":
        if bits is None:
            return self
        return ComplexBox(self.re.rounded(bits), self.im.rounded(bits))

    def conj(self) -> "ComplexBox":
        return ComplexBox(self.re, -self.im)

    def contains(self, other) -> bool:
        if isinstance(other, ComplexBox):
            return self.re.contains(other.re) and self.im.contains(other.im)
        re, im = other
        return self.re.contains(re) and self.im.contains(im)

    def intersects(self, other: "ComplexBox") -> bool:
        return self.re.intersects(other.re) and self.im.intersects(other.im)

    def intersect(self, other: "ComplexBox") -> "ComplexBox":
        return ComplexBox(self.re.intersect(other.re), self.im.intersect(other.im))

    def contains_zero(self) -> bool:
        return self.re.contains(0) and self.im.contains(0)

    def __neg__(self):
        return ComplexBox(-self.re, -self.im)

    def __add__(self, other):
        other = _as_box(other)
        return ComplexBox(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_box(other)
        return ComplexBox(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_box(other) - self

    def __mul__(self, other):
        other = _as_box(other)
        return ComplexBox(self.re * other.re - self.im * other.im,
                          self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def abs2(self) -> Interval:
        return self.re.square() + self.im.square()

    def inverse(self) -> "ComplexBox":
        n = self.abs2()
        if n.lo <= 0:
            raise ZeroDivisionError("box may contain zero")
        inv = Interval(1 / n.hi, 1 / n.lo)
        return ComplexBox(self.re * inv, -self.im * inv)

    def __truediv__(self, other):
        return self * _as_box(other).inverse()

    def mul(self, other, bits: Optional[int] = None) -> "ComplexBox":
        return (self * other).rounded(bits)

    def pow(self, n: int, bits: Optional[int] = None) -> "ComplexBox":
        if n < 0:
            return self.inverse().rounded(bits).pow(-n, bits)
        result = ComplexBox.exact(1)
        base = self
        while n:
            if n & 1:
                result = result.mul(base, bits)
            n >>= 1
            if n:
                base = base.mul(base, bits)
        return result

    def __repr__(self):
        return f"ComplexBox(re={self.re!r}, im={self.im!r})"


def _as_box(x) -> ComplexBox:
    if isinstance(x, ComplexBox):
        return x
    if isinstance(x, Interval):
        return ComplexBox(x, Interval.exact(0))
    if isinstance(x, complex):
        raise TypeError("binary floats are not accepted in exact boxes")
    return ComplexBox.exact(x)
