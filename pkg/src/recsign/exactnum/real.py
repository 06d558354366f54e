"""Refinable real numbers and rigorous transcendental enclosures.

A :class:`Real` is a function from working precision (bits) to an
:class:`Interval` whose width shrinks as the precision grows, plus an optional
exact rational value. Transcendental enclosures come from ``mpmath.iv``;
endpoints are converted to exact binary fractions, so nothing downstream
touches a float.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Callable, Iterator, Optional

from mpmath import iv

from .errors import PrecisionExhausted
from .intervals import Interval

START_BITS = 64

# Hardcoded enclosure used for the lattice-geometry comparisons (Minkowski,
# 16/pi); the comparisons that arise are far from equality.
PI_LO = Fraction("3.14159265358979")
PI_HI = Fraction("3.14159265358980")


def precision_budget() -> int:
    """Maximum working precision in bits (env ``OSC_PRECISION_BUDGET``)."""
    raw = os.environ.get("OSC_PRECISION_BUDGET")
    if raw:
        value = int(raw)
        if value < START_BITS:
            raise ValueError("OSC_PRECISION_BUDGET must be at least 64")
        return value
    return 4096


def ladder(budget: Optional[int] = None, start: int = START_BITS) -> Iterator[int]:
    """Working precisions start, 2*start, ... up to and including the budget."""
    cap = budget if budget is not None else precision_budget()
    bits = min(start, cap)
    while True:
        yield bits
        if bits >= cap:
            return
        bits = min(2 * bits, cap)


def mpf_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    if not man and exp:
        raise PrecisionExhausted("non-finite value in interval enclosure")
    value = Fraction(int(man)) * (Fraction(2) ** exp) if exp >= 0 else Fraction(int(man), 1 << -exp)
    return -value if sign else value


def from_iv(x) -> Interval:
    lo, hi = x._mpi_
    return Interval(mpf_to_fraction(lo), mpf_to_fraction(hi))


def to_iv(x: Interval):
    lo = iv.mpf(x.lo.numerator) / x.lo.denominator
    if x.is_exact:
        return lo
    hi = iv.mpf(x.hi.numerator) / x.hi.denominator
    return iv.mpf([lo.a, hi.b])


class _Prec:
    def __init__(self, bits: int):
        self.bits = bits

    def __enter__(self):
        self.saved = iv.prec
        iv.prec = self.bits + 16
        return self

    def __exit__(self, *exc):
        iv.prec = self.saved


def pi_interval(bits: int) -> Interval:
    with _Prec(bits):
        return from_iv(iv.pi)


def sin_interval(x: Interval, bits: int) -> Interval:
    with _Prec(bits):
        return from_iv(iv.sin(to_iv(x)))


def cos_interval(x: Interval, bits: int) -> Interval:
    with _Prec(bits):
        return from_iv(iv.cos(to_iv(x)))


def sin_turns(t: Interval, bits: int) -> Interval:
    """Enclosure of sin(2*pi*t); exact at the quarter turns."""
    if t.is_exact:
        q = t.lo - (t.lo.numerator // t.lo.denominator)
        exact = {Fraction(0): 0, Fraction(1, 4): 1, Fraction(1, 2): 0, Fraction(3, 4): -1}
        if q in exact:
            return Interval.exact(exact[q])
    with _Prec(bits):
        return from_iv(iv.sin(2 * iv.pi * to_iv(t)))


def cos_turns(t: Interval, bits: int) -> Interval:
    return sin_turns(t + Fraction(1, 4), bits)


def atan2_interval(y: Interval, x: Interval, bits: int) -> Interval:
    with _Prec(bits):
        return from_iv(iv.atan2(to_iv(y), to_iv(x)))


def sqrt_interval(x: Interval, bits: int) -> Interval:
    if x.lo < 0:
        raise ValueError("sqrt of an interval reaching below zero")
    with _Prec(bits):
        return from_iv(iv.sqrt(to_iv(x)))


class Real:
    """A real number known through shrinking rational enclosures."""

    __slots__ = ("_fn", "exact", "label", "_cache")

    def __init__(self, fn: Callable[[int], Interval], exact: Optional[Fraction] = None,
                 label: str = ""):
        self._fn = fn
        self.exact = exact
        self.label = label
        self._cache: dict = {}

    @classmethod
    def rational(cls, q) -> "Real":
        q = Fraction(q)
        iv_ = Interval.exact(q)
        return cls(lambda bits: iv_, exact=q, label=str(q))

    @classmethod
    def from_interval(cls, x: Interval, label: str = "") -> "Real":
        """A fixed enclosure that cannot be refined (approximate data)."""
        return cls(lambda bits: x, exact=x.lo if x.is_exact else None, label=label)

    def interval(self, bits: int) -> Interval:
        if self.exact is not None:
            return Interval.exact(self.exact)
        hit = self._cache.get(bits)
        if hit is None:
            hit = self._fn(bits)
            self._cache[bits] = hit
        return hit

    def sign(self, budget: Optional[int] = None) -> int:
        """Certified sign; an exact zero is only reported for exact values."""
        if self.exact is not None:
            return (self.exact > 0) - (self.exact < 0)
        for bits in ladder(budget):
            s = self.interval(bits).sign()
            if s is not None and s != 0:
                return s
        raise PrecisionExhausted(f"sign of {self.label or 'real'} undecided at budget")

    def compare(self, q, budget: Optional[int] = None) -> int:
        """Sign of (self - q) for a rational q."""
        q = Fraction(q)
        if self.exact is not None:
            return (self.exact > q) - (self.exact < q)
        for bits in ladder(budget):
            s = (self.interval(bits) - q).sign()
            if s is not None and s != 0:
                return s
        raise PrecisionExhausted(f"comparison of {self.label or 'real'} with {q} undecided")

    def approx(self) -> float:
        return float(self.interval(START_BITS).mid)

    def map(self, fn: Callable[[Interval, int], Interval], label: str = "") -> "Real":
        """Compose with an interval function ``fn(enclosure, bits)``."""
        return Real(lambda bits: fn(self.interval(bits), bits), label=label or self.label)

    def __neg__(self):
        if self.exact is not None:
            return Real.rational(-self.exact)
        return Real(lambda bits: -self.interval(bits), label=f"-{self.label}")

    def __add__(self, other):
        other = as_real(other)
        if self.exact is not None and other.exact is not None:
            return Real.rational(self.exact + other.exact)
        return Real(lambda bits: self.interval(bits) + other.interval(bits))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-as_real(other))

    def __rsub__(self, other):
        return as_real(other) - self

    def __mul__(self, other):
        other = as_real(other)
        if self.exact is not None and other.exact is not None:
            return Real.rational(self.exact * other.exact)
        return Real(lambda bits: (self.interval(bits) * other.interval(bits)).rounded(bits + 8))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_real(other)
        if self.exact is not None and other.exact is not None:
            return Real.rational(self.exact / other.exact)
        return Real(lambda bits: (self.interval(bits) / other.interval(bits)).rounded(bits + 8))

    def __repr__(self):
        if self.exact is not None:
            return f"Real({self.exact})"
        return f"Real(~{self.approx():.12g})"


def as_real(x) -> Real:
    if isinstance(x, Real):
        return x
    if isinstance(x, Interval):
        return Real.from_interval(x)
    if isinstance(x, float):
        return Real.rational(Fraction(x))
    return Real.rational(x)
