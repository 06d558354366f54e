"""Isolated algebraic roots with refinable boxes, plus the exact identities
(equality, modulus squared, ratios, powers) built on resultants.

Isolation and real refinement are delegated to sympy; every answer that
matters is decided on polynomial data, with boxes only used to tell roots of
one irreducible factor apart.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Callable, Optional

import sympy
from mpmath import mp

from .errors import HypothesisViolation, PrecisionExhausted
from .intervals import ComplexBox, Interval
from .ratpoly import RatPoly, bivariate_symbols, resultant_in_x
from .real import mpf_to_fraction, ladder

_Z = sympy.Symbol("z")


def _frac(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


@lru_cache(maxsize=4096)
def _isolate_factor(coeffs: tuple, eps: Optional[Fraction]):
    """Isolating data for an irreducible factor: real intervals and upper-half boxes."""
    poly = RatPoly(coeffs)
    if poly.degree == 1:
        root = -poly[0] / poly[1]
        return (Interval.exact(root),), ()
    kw = {} if eps is None else {"eps": sympy.Rational(eps.numerator, eps.denominator)}
    reals, cplx = poly.to_sympy().intervals(all=True, **kw)
    real_boxes = tuple(Interval(_frac(a), _frac(b)) for (a, b), _ in reals)
    upper = []
    for (sw, ne), _ in cplx:
        re_lo, im_lo = (_frac(v) for v in sympy.sympify(sw).as_real_imag())
        re_hi, im_hi = (_frac(v) for v in sympy.sympify(ne).as_real_imag())
        if im_lo >= 0 and im_hi > 0:
            upper.append(ComplexBox.from_corners(re_lo, re_hi, im_lo, im_hi))
    upper.sort(key=lambda b: (b.re.lo, b.im.lo))
    return real_boxes, tuple(upper)


def _zero_interval() -> Interval:
    return Interval.exact(0)


@dataclass(frozen=True, eq=False)
class AlgebraicRoot:
    """A root of an irreducible primitive polynomial, pinned by a box.

    Real roots always carry an imaginary part of exactly ``[0, 0]``, so
    realness is decided by the box shape, never numerically.
    """

    defining: RatPoly
    box: ComplexBox
    multiplicity: int = 1
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def is_real(self) -> bool:
        return self.box.im.is_exact and self.box.im.lo == 0

    @property
    def is_rational(self) -> bool:
        return self.defining.degree == 1

    @property
    def value(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("root is irrational")
        return -self.defining[0] / self.defining[1]

    @property
    def upper(self) -> bool:
        """True for real roots and roots in the open upper half plane."""
        return self.is_real or self.box.im.hi > 0

    def conj(self) -> "AlgebraicRoot":
        if self.is_real:
            return self
        return AlgebraicRoot(self.defining, self.box.conj(), self.multiplicity)

    def with_multiplicity(self, m: int) -> "AlgebraicRoot":
        return AlgebraicRoot(self.defining, self.box, m)

    def refine(self, eps) -> "AlgebraicRoot":
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        if self.box.width <= eps:
            return self
        box = _refine_box(self.defining.coeffs, self.box, eps)
        return AlgebraicRoot(self.defining, box, self.multiplicity)

    def enclosure(self, bits: int) -> ComplexBox:
        hit = self._memo.get(bits)
        if hit is None:
            hit = self.refine(Fraction(1, 1 << bits)).box
            self._memo[bits] = hit
        return hit

    def approx(self) -> complex:
        b = self.enclosure(60)
        return complex(float(b.re.mid), float(b.im.mid))

    def __repr__(self):
        return f"AlgebraicRoot({self.defining}, ~{self.approx():.10g}, mult={self.multiplicity})"


def _gauss_eval(coeffs: tuple, re: Fraction, im: Fraction):
    """Exact p(re + i im) as a pair of Fractions."""
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        ar, ai = ar * re - ai * im + c, ar * im + ai * re
    return ar, ai


def _sqrt_up(q: Fraction, bits: int) -> Fraction:
    """A dyadic upper bound for sqrt(q)."""
    scale = 1 << (2 * bits)
    n = -(-q.numerator * scale // q.denominator)
    r = isqrt(n)
    if r * r < n:
        r += 1
    return Fraction(r, 1 << bits)


def _newton(coeffs: tuple, box: ComplexBox, bits: int):
    """High-precision Newton from the box centre; returns exact rational parts."""
    with mp.workprec(bits + 40):
        cs = [mp.mpf(c.numerator) / c.denominator for c in reversed(coeffs)]
        ds = [c * (len(cs) - 1 - i) for i, c in enumerate(cs[:-1])]
        z = mp.mpc(mp.mpf(box.re.mid.numerator) / box.re.mid.denominator,
                   mp.mpf(box.im.mid.numerator) / box.im.mid.denominator)
        tol = mp.mpf(2) ** (-(bits + 20))
        for _ in range(4 * bits + 100):
            step = mp.polyval(cs, z) / mp.polyval(ds, z)
            z -= step
            if abs(step) < tol:
                break
        else:
            return None
        return mpf_to_fraction(z.real._mpf_), mpf_to_fraction(z.imag._mpf_)


def _certify_complex(coeffs: tuple, box: ComplexBox, eps: Fraction):
    bits = max(int(1 / eps).bit_length() + 4, 16)
    approx = _newton(coeffs, box, bits)
    if approx is None:
        return None
    x, y = approx
    deriv = tuple(i * c for i, c in enumerate(coeffs) if i)
    pr, pi = _gauss_eval(coeffs, x, y)
    dr, di = _gauss_eval(deriv, x, y)
    den = dr * dr + di * di
    if den == 0:
        return None
    n = len(coeffs) - 1
    rad = _sqrt_up(n * n * (pr * pr + pi * pi) / den, bits + 8)
    disk = ComplexBox.from_corners(x - rad, x + rad, y - rad, y + rad)
    if not box.contains(disk) or disk.width > eps:
        return None
    return disk


def _certify_real(coeffs: tuple, box: ComplexBox, eps: Fraction):
    bits = max(int(1 / eps).bit_length() + 4, 16)
    approx = _newton(coeffs, ComplexBox(box.re, _zero_interval()), bits)
    if approx is None:
        return None
    x = approx[0]
    h = Fraction(1, 1 << (bits + 2))
    lo, hi = max(x - h, box.re.lo), min(x + h, box.re.hi)
    if lo >= hi:
        return None
    p = RatPoly(coeffs)
    if p(lo) * p(hi) < 0:
        return ComplexBox(Interval(lo, hi), _zero_interval())
    return None


@lru_cache(maxsize=8192)
def _refine_box(coeffs: tuple, box: ComplexBox, eps: Fraction) -> ComplexBox:
    poly = RatPoly(coeffs)
    if box.is_exact:
        return box
    if box.im.is_exact:
        fast = _certify_real(coeffs, box, eps) if box.width < Fraction(1, 1 << 10) else None
        if fast is not None:
            return fast
        if eps < Fraction(1, 1 << 10):
            coarse = _refine_box(coeffs, box, Fraction(1, 1 << 10))
            fast = _certify_real(coeffs, coarse, eps)
            if fast is not None:
                return fast
        a, b = poly.to_sympy().refine_root(
            sympy.Rational(box.re.lo.numerator, box.re.lo.denominator),
            sympy.Rational(box.re.hi.numerator, box.re.hi.denominator),
            eps=sympy.Rational(eps.numerator, eps.denominator))
        lo, hi = sorted((_frac(a), _frac(b)))
        return ComplexBox(Interval(lo, hi), _zero_interval())
    lower = box.im.hi <= 0
    target = box.conj() if lower else box
    if eps < Fraction(1, 1 << 12):
        coarse = target if target.width <= Fraction(1, 1 << 12) else \
            _refine_box(coeffs, target, Fraction(1, 1 << 12))
        fast = _certify_complex(coeffs, coarse, eps)
        if fast is not None:
            return fast.conj() if lower else fast
    step = eps
    for _ in range(64):
        _, upper = _isolate_factor(coeffs, step)
        inside = [b for b in upper if target.contains(b)]
        touching = [b for b in upper if target.intersects(b)]
        pick = inside[0] if len(inside) == 1 else (touching[0] if len(touching) == 1 else None)
        if pick is not None and pick.width <= eps:
            found = target.intersect(pick)
            return found.conj() if lower else found
        step = step / 4
    raise PrecisionExhausted("complex root refinement did not converge")


def isolate_roots(p: RatPoly) -> list:
    """All roots of a nonzero polynomial, each tagged with its multiplicity."""
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    out = []
    for factor, mult in p.factor():
        out.extend(r.with_multiplicity(mult) for r in roots_of_irreducible(factor))
    return out


def roots_of_irreducible(f: RatPoly) -> list:
    """Roots of an irreducible polynomial: reals ascending, then conjugate pairs."""
    f = f.primitive()
    reals, upper = _isolate_factor(f.coeffs, None)
    out = [AlgebraicRoot(f, ComplexBox(iv, _zero_interval())) for iv in reals]
    for b in upper:
        out.append(AlgebraicRoot(f, b))
        out.append(AlgebraicRoot(f, b.conj()))
    return out


def distinct_roots(p: RatPoly) -> list:
    return [r for f, _ in p.factor() for r in roots_of_irreducible(f)]


@lru_cache(maxsize=4096)
def _separation_sq(coeffs: tuple) -> Fraction:
    """A lower bound for the squared minimal distance between two roots of a
    squarefree polynomial (Mahler's bound, with the 2-norm bounding the
    Mahler measure)."""
    f = RatPoly(coeffs)
    n = f.degree
    scale = 1
    for c in f.coeffs:
        scale = scale * c.denominator // gcd(scale, c.denominator)
    ints = [int(c * scale) for c in f.coeffs]
    disc = sympy.discriminant(sympy.Poly(list(reversed(ints)), _Z))
    norm2 = sum(c * c for c in ints)
    return Fraction(3 * abs(int(disc)), n ** (n + 2) * norm2 ** (n - 1))


def _diameter_sq(box: ComplexBox) -> Fraction:
    return box.re.width ** 2 + box.im.width ** 2


def _vanishes_possibly(f: RatPoly, box: ComplexBox, bits: int) -> bool:
    v = horner_box(f, box, bits)
    return v.re.contains(0) and v.im.contains(0)


def locate(p: RatPoly, enclosure: Callable[[int], ComplexBox], real_only: bool = False,
           budget: Optional[int] = None) -> AlgebraicRoot:
    """The root of ``p`` that a number known through ``enclosure`` equals.

    The caller guarantees the number is a root of ``p``. Interval evaluation
    rules out the other irreducible factors; once the enclosure is narrower
    than the root separation of the remaining factor it isolates the number,
    so no full root isolation of ``p`` is needed.
    """
    factors = [f for f, _ in p.factor()]
    if not factors:
        raise ValueError("constant polynomial has no roots")
    for bits in ladder(budget, start=16):
        e = enclosure(bits)
        if real_only:
            e = ComplexBox(e.re, _zero_interval())
        factors = [f for f in factors if _vanishes_possibly(f, e, bits + 16)]
        if not factors:
            raise ValueError("enclosed number is not a root of the given polynomial")
        if len(factors) > 1:
            continue
        f = factors[0]
        if f.degree == 1:
            return rational_root(-f[0] / f[1])
        if _diameter_sq(e) >= _separation_sq(f.coeffs) or e.width > Fraction(1, 1 << 12):
            continue
        if real_only or e.im.contains(0):
            lo, hi = e.re.lo, e.re.hi
            if lo < hi and f(lo) * f(hi) < 0:
                # the only root in e is real
                return AlgebraicRoot(f, ComplexBox(Interval(lo, hi), _zero_interval()))
            continue  # a non-real root whose box still meets the axis
        return AlgebraicRoot(f, e)
    raise PrecisionExhausted("could not single out a root")


def same_number(r: AlgebraicRoot, s: AlgebraicRoot) -> bool:
    """Exact equality: same irreducible factor and same root of it."""
    if r.defining != s.defining:
        return False
    if r.is_rational:
        return True
    if r.is_real != s.is_real:
        return False
    if not r.box.intersects(s.box):
        return False
    sep = _separation_sq(r.defining.coeffs)
    for bits in ladder(None, start=16):
        a, b = r.enclosure(bits), s.enclosure(bits)
        if not a.intersects(b):
            return False
        hull = ComplexBox(Interval(min(a.re.lo, b.re.lo), max(a.re.hi, b.re.hi)),
                          Interval(min(a.im.lo, b.im.lo), max(a.im.hi, b.im.hi)))
        if _diameter_sq(hull) < sep:
            return True
    raise PrecisionExhausted("root identity undecided")


def compare_real(r: AlgebraicRoot, s, budget: Optional[int] = None) -> int:
    """Sign of r - s for real algebraic r and real algebraic or rational s."""
    if not isinstance(s, AlgebraicRoot):
        s = rational_root(s)
    if not (r.is_real and s.is_real):
        raise ValueError("compare_real needs real numbers")
    if same_number(r, s):
        return 0
    for bits in ladder(budget, start=16):
        d = r.enclosure(bits).re - s.enclosure(bits).re
        sg = d.sign()
        if sg:
            return sg
    raise PrecisionExhausted("real comparison undecided")


def rational_root(q) -> AlgebraicRoot:
    q = Fraction(q)
    return AlgebraicRoot(RatPoly([-q, 1]).primitive(), ComplexBox.exact(q))


def gaussian_root(re, im) -> AlgebraicRoot:
    """The Gaussian rational re + i*im as an algebraic root."""
    re, im = Fraction(re), Fraction(im)
    if im == 0:
        return rational_root(re)
    f = RatPoly([re * re + im * im, -2 * re, 1]).primitive()
    return AlgebraicRoot(f, ComplexBox.exact(re, im))


def sign_of_real(r: AlgebraicRoot, budget: Optional[int] = None) -> int:
    return compare_real(r, rational_root(0), budget)


def horner_box(h: RatPoly, box: ComplexBox, bits: int) -> ComplexBox:
    acc = ComplexBox.exact(0)
    for c in reversed(h.coeffs):
        acc = (acc * box + c).rounded(bits)
    return acc


def _coeff_bits(h: RatPoly) -> int:
    top = max((abs(c) for c in h.coeffs), default=Fraction(1))
    return max(int(top).bit_length(), 1) + 2 * max(h.degree, 1)


def invmod(h: RatPoly, f: RatPoly) -> RatPoly:
    """Inverse of h modulo f (f irreducible, h not divisible by f)."""
    r0, r1 = f, h % f
    s0, s1 = RatPoly(), RatPoly([1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise ZeroDivisionError("element is not invertible modulo f")
    return (s0 * (1 / r0[0])) % f


def field_element(alpha: AlgebraicRoot, h: RatPoly) -> AlgebraicRoot:
    """The number h(alpha) with its own defining polynomial, located exactly."""
    f = alpha.defining
    h = h % f
    if h.degree <= 0:
        return rational_root(h[0])
    x, t = bivariate_symbols()
    res = resultant_in_x(f, t - h.to_sympy(x).as_expr())
    extra = _coeff_bits(h)
    return locate(res, lambda bits: horner_box(h, alpha.enclosure(bits + extra), bits + extra))


def power(alpha: AlgebraicRoot, u: int) -> AlgebraicRoot:
    """alpha**u exactly, for any integer u (alpha nonzero when u < 0)."""
    f = alpha.defining
    if alpha.is_rational:
        return rational_root(alpha.value ** u)
    base = RatPoly([0, 1]) if u >= 0 else invmod(RatPoly([0, 1]), f)
    result, e = RatPoly([1]), abs(u)
    while e:
        if e & 1:
            result = (result * base) % f
        base = (base * base) % f
        e >>= 1
    return field_element(alpha, result)


def product_poly(f: RatPoly) -> RatPoly:
    """Res_x(f(x), x^n f(t/x)): its roots are all products of two roots of f."""
    x, t = bivariate_symbols()
    n = f.degree
    g = sum(sympy.Rational(c.numerator, c.denominator) * t ** i * x ** (n - i)
            for i, c in enumerate(f.coeffs))
    return resultant_in_x(f, g).primitive()


def quotient_of_roots_poly(p: RatPoly) -> RatPoly:
    """Res_x(p(x), p(t x)): its roots include every quotient of two roots of p."""
    if p.is_zero() or p[0] == 0:
        raise HypothesisViolation("quotient polynomial needs p(0) != 0")
    x, t = bivariate_symbols()
    q = sum(sympy.Rational(c.numerator, c.denominator) * (t * x) ** i
            for i, c in enumerate(p.coeffs))
    return resultant_in_x(p, q).primitive()


def modulus_squared(r: AlgebraicRoot) -> AlgebraicRoot:
    """|r|^2 as an exact real algebraic number."""
    key = ("abs2",)
    if key in r._memo:
        return r._memo[key]
    if r.is_rational:
        out = rational_root(r.value ** 2)
    elif r.is_real:
        out = field_element(r, RatPoly([0, 0, 1]))
    else:
        out = locate(product_poly(r.defining),
                     lambda bits: ComplexBox(r.enclosure(bits + 4).abs2().rounded(bits + 8),
                                             _zero_interval()),
                     real_only=True)
    r._memo[key] = out
    return out


def unit_ratio(r: AlgebraicRoot) -> AlgebraicRoot:
    """r / conj(r), a number on the unit circle with argument 2 arg(r)."""
    if r.is_real:
        return rational_root(1)
    q = quotient_of_roots_poly(r.defining)

    def enc(bits):
        b = r.enclosure(bits + 8)
        return (b / b.conj()).rounded(bits + 8)

    return locate(q, enc)


def real_enclosure(r: AlgebraicRoot, bits: int) -> Interval:
    if not r.is_real:
        raise ValueError("not a real root")
    return r.enclosure(bits).re
