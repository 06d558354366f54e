"""Recurrences, their generalized power-sum form, and the dominating-root data.

The power sum is kept in trace form: for every irreducible factor f of the
characteristic polynomial with multiplicity mu, the coefficient polynomial at a
root alpha of f is C(n) = sum_j h_j(alpha) n^j with rational polynomials h_j
reduced mod f. Since a(n) is rational, the same h_j serve all conjugates of
alpha, so the unknowns are rational and a coefficient vanishes exactly when
its h_j is the zero polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Optional

from .exactnum import (
    AlgebraicRoot,
    ComplexBox,
    CyclotomicNumber,
    HypothesisViolation,
    Interval,
    PrecisionExhausted,
    RatPoly,
    Real,
    compare_real,
    field_element,
    modulus_squared,
)
from .exactnum.ratpoly import bivariate_symbols, resultant_in_x
from .exactnum.real import atan2_interval, ladder, pi_interval, sin_turns, sqrt_interval
from .exactnum.roots import _coeff_bits, horner_box, roots_of_irreducible, sign_of_real
from .kronecker import AngleDescriptor, angle_of_root


# --- recurrences -------------------------------------------------------------

@dataclass(frozen=True)
class Recurrence:
    """a(n+d) = s_1 a(n+d-1) + ... + s_d a(n), with a(0..d-1) = initials.

    Trailing zero coefficients are stripped on construction; the values that
    the shorter recurrence no longer reaches move to ``prefix``, so that
    a(n) = prefix[n] for n < offset and the recurrence governs the rest.
    """

    coeffs: tuple
    initials: tuple
    prefix: tuple = ()

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        initials = tuple(Fraction(v) for v in self.initials)
        prefix = tuple(Fraction(v) for v in self.prefix)
        if len(initials) != len(coeffs):
            raise ValueError(f"need {len(coeffs)} initial values, got {len(initials)}")
        while coeffs and coeffs[-1] == 0:
            prefix += initials[:1]
            initials, coeffs = initials[1:], coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "initials", initials)
        object.__setattr__(self, "prefix", prefix)

    @classmethod
    def create(cls, coeffs, initials) -> "Recurrence":
        if not coeffs:
            raise ValueError("a recurrence needs at least one coefficient")
        return cls(tuple(coeffs), tuple(initials))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def offset(self) -> int:
        return len(self.prefix)

    def terms(self, count: int) -> list:
        """a(0), ..., a(count-1) exactly."""
        out = list(self.prefix[:count])
        window = list(self.initials)
        d = self.order
        while len(out) < count:
            if d == 0:
                out.append(Fraction(0))
                continue
            out.append(window[0])
            nxt = sum((s * v for s, v in zip(self.coeffs, reversed(window))), Fraction(0))
            window = window[1:] + [nxt]
        return out

    def scaled(self, factor) -> "Recurrence":
        f = Fraction(factor)
        return Recurrence(self.coeffs, tuple(v * f for v in self.initials),
                          tuple(v * f for v in self.prefix))


def char_poly(rec: Recurrence) -> RatPoly:
    """z^d - s_1 z^(d-1) - ... - s_d."""
    d = rec.order
    return RatPoly([-rec.coeffs[d - 1 - i] for i in range(d)] + [Fraction(1)])


def eval_exact(rec: Recurrence, n: int) -> Fraction:
    if n < 0:
        raise ValueError("index must be non-negative")
    return rec.terms(n + 1)[n]


@dataclass(frozen=True)
class SignSummary:
    first_positive: Optional[int]
    first_negative: Optional[int]
    last_positive: Optional[int]
    last_negative: Optional[int]
    sign_changes: int
    positives: int
    negatives: int
    zeros: int

    def to_json(self):
        return dict(self.__dict__)


def summarize(signs_: list) -> SignSummary:
    pos = [i for i, s in enumerate(signs_) if s == "+"]
    neg = [i for i, s in enumerate(signs_) if s == "-"]
    nonzero = [s for s in signs_ if s != "0"]
    changes = sum(1 for a, b in zip(nonzero, nonzero[1:]) if a != b)
    return SignSummary(pos[0] if pos else None, neg[0] if neg else None,
                       pos[-1] if pos else None, neg[-1] if neg else None,
                       changes, len(pos), len(neg), len(signs_) - len(pos) - len(neg))


def _sign_char(v) -> str:
    return "+" if v > 0 else ("-" if v < 0 else "0")


def signs(rec: Recurrence, N: int) -> tuple:
    """Exact signs of a(0..N) and their summary."""
    out = [_sign_char(v) for v in rec.terms(N + 1)]
    return out, summarize(out)


def subsequence(rec: Recurrence, start: int, step: int) -> Recurrence:
    """u(k) = a(start + step*k) as a recurrence in its own right.

    The roots of Res_x(p(x), t - x^step) are the step-th powers of the roots
    of p, with multiplicities adding up, so it annihilates u once
    start + step*k has passed the offset.
    """
    if step < 1 or start < 0:
        raise ValueError("need step >= 1 and start >= 0")
    d = rec.order
    skip = max(0, -(-(rec.offset - start) // step))
    if d == 0:
        return Recurrence((0,), (0,), tuple(eval_exact(rec, start + step * k) for k in range(skip)))
    x, t = bivariate_symbols()
    q = resultant_in_x(char_poly(rec), t - x ** step).monic()
    coeffs = tuple(-q[d - i] for i in range(1, d + 1))
    vals = rec.terms(start + step * (skip + d) + 1)
    prefix = tuple(vals[start + step * k] for k in range(skip))
    initials = tuple(vals[start + step * (skip + k)] for k in range(d))
    return Recurrence(coeffs, initials, prefix)


# --- power-sum form ----------------------------------------------------------

def _power_sums(f: RatPoly, count: int) -> list:
    """sum of alpha^m over the roots of f, m = 0..count-1 (Newton's identities)."""
    g = f.monic()
    k = g.degree
    e = [g[k - i] for i in range(k + 1)]          # e[0] = 1, e[i] = coefficient of x^(k-i)
    out = [Fraction(k)]
    for m in range(1, count):
        acc = -sum((e[i] * out[m - i] for i in range(1, min(m, k + 1))), Fraction(0))
        if m <= k:
            acc -= m * e[m]
        out.append(acc)
    return out


def _solve(matrix: list, rhs: list) -> list:
    """Gauss-Jordan elimination over the rationals; the matrix must be regular."""
    n = len(rhs)
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            raise ArithmeticError("singular power-sum system")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [v * inv for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                fac = rows[r][col]
                rows[r] = [a - fac * b for a, b in zip(rows[r], rows[col])]
    return [rows[r][n] for r in range(n)]


@dataclass(eq=False)
class PowerTerm:
    """C(n) alpha^n with C(n) = sum_j h_j(alpha) n^j."""

    root: AlgebraicRoot
    coeff_polys: tuple

    @property
    def degree(self) -> int:
        """Degree of C in n; -1 when the term vanishes."""
        nz = [j for j, h in enumerate(self.coeff_polys) if not h.is_zero()]
        return nz[-1] if nz else -1

    def coeff_boxes(self, bits: int) -> list:
        out = []
        for h in self.coeff_polys:
            extra = _coeff_bits(h)
            out.append(horner_box(h, self.root.enclosure(bits + extra), bits + extra))
        return out

    def coefficient(self, j: int) -> AlgebraicRoot:
        """h_j(alpha) as an exact algebraic number."""
        return field_element(self.root, self.coeff_polys[j])

    def evaluate(self, n: int, bits: int) -> ComplexBox:
        acc = ComplexBox.exact(0)
        for j, c in enumerate(self.coeff_boxes(bits)):
            acc = acc + c * (n ** j)
        return acc.mul(self.root.enclosure(bits + 8).pow(n, bits + 8), bits + 8)


@dataclass(eq=False)
class PowerSumForm:
    terms: list
    source: Recurrence

    @property
    def offset(self) -> int:
        return self.source.offset

    def nonzero_terms(self) -> list:
        return [t for t in self.terms if t.degree >= 0]

    def evaluate(self, n: int, bits: int = 64) -> ComplexBox:
        """Enclosure of a(n); exact prefix values are returned as points."""
        if n < self.offset:
            return ComplexBox.exact(self.source.prefix[n])
        acc = ComplexBox.exact(0)
        for t in self.nonzero_terms():
            acc = acc + t.evaluate(n, bits)
        return acc


def to_power_sum(rec: Recurrence) -> PowerSumForm:
    d, off = rec.order, rec.offset
    if d == 0:
        return PowerSumForm([], rec)
    factors = char_poly(rec).factor()
    columns = [(f, j, i) for f, mu in factors for j in range(mu) for i in range(f.degree)]
    sums = {f: _power_sums(f, off + d + f.degree) for f, _ in factors}
    ns = range(off, off + d)
    matrix = [[Fraction(n) ** j * sums[f][n + i] for f, j, i in columns] for n in ns]
    sol = _solve(matrix, rec.terms(off + d)[off:])
    terms, k = [], 0
    for f, mu in factors:
        polys = []
        for j in range(mu):
            polys.append(RatPoly(sol[k:k + f.degree]))
            k += f.degree
        for r in roots_of_irreducible(f):
            terms.append(PowerTerm(r.with_multiplicity(mu), tuple(polys)))
    return PowerSumForm(terms, rec)


# --- dominant data -----------------------------------------------------------

@dataclass(eq=False)
class RealCoefficient:
    """Coefficient of a dominating real root (after dividing by n^D |alpha|^n)."""

    value: Real
    sign: int
    exact: Optional[Fraction] = None

    def to_json(self):
        out = {"sign": self.sign, "approx": self.value.approx()}
        if self.exact is not None:
            out["exact"] = str(self.exact)
        return out


@dataclass(eq=False)
class DominantPair:
    """One conjugate pair contributing w sin(2 pi (n xi + phi_turns))."""

    angle: AngleDescriptor
    w: Real
    phi_turns: Real
    coefficient: object = None         # AlgebraicRoot or Gaussian (re, im)
    root: Optional[AlgebraicRoot] = None

    def value(self, n: int, bits: int) -> Interval:
        t = (self.angle.enclosure(bits + 2 * n.bit_length() + 8) * n + self.phi_turns.interval(bits + 8))
        s = sin_turns(t.rounded(bits + 8), bits + 8)
        return (self.w.interval(bits + 8) * s).rounded(bits + 4)

    def exact_value(self, n: int, M: int) -> Optional[CyclotomicNumber]:
        """The term as an element of Q(zeta_M), when the data allow it."""
        if not self.angle.is_rational:
            return None
        xi = self.angle.rational
        if isinstance(self.coefficient, tuple):
            re, im = self.coefficient
            k = xi * n * M
            if k.denominator != 1:
                return None
            z = CyclotomicNumber.zeta_power(M, int(k))
            c = CyclotomicNumber.gaussian(M, re, im)
            cb = CyclotomicNumber.gaussian(M, re, -im)
            return c * z + cb * CyclotomicNumber.zeta_power(M, -int(k))
        if self.w.exact is not None and self.phi_turns.exact is not None:
            k = (xi * n + self.phi_turns.exact) * M
            if k.denominator != 1:
                return None
            return CyclotomicNumber.sin_turns(M, int(k)) * self.w.exact
        return None

    def to_json(self):
        out = {"xi": self.angle.to_json(), "w": _real_json(self.w), "phi_turns": _real_json(self.phi_turns)}
        if isinstance(self.coefficient, tuple):
            out["coefficient"] = {"re": str(self.coefficient[0]), "im": str(self.coefficient[1])}
        return out


def _real_json(x: Real):
    if x.exact is not None:
        return str(x.exact)
    iv = x.interval(64)
    return {"lo": str(iv.lo), "hi": str(iv.hi), "approx": float(iv.mid)}


@dataclass(eq=False)
class RemainderModel:
    """What is left after the dominant part, in normalised units.

    kinds: "zero" (nothing left), "exponential" (|r(n)| = O(omega^n)),
    "polynomial" (O(1/n)), "sequence" (exact values through ``values``).
    """

    kind: str
    omega: Optional[Fraction] = None
    values: Optional[Callable[[int], Fraction]] = None
    description: str = ""

    def __post_init__(self):
        if self.kind not in ("zero", "exponential", "polynomial", "sequence"):
            raise ValueError(f"unknown remainder kind {self.kind!r}")
        if self.kind == "exponential" and not (self.omega is not None and 0 < self.omega < 1):
            raise ValueError("exponential remainder needs 0 < omega < 1")

    @classmethod
    def geometric(cls, coefficient, ratio) -> "RemainderModel":
        """r(n) = coefficient * ratio^n with |ratio| < 1."""
        c, q = Fraction(coefficient), Fraction(ratio)
        if not abs(q) < 1:
            raise ValueError("geometric remainder needs |ratio| < 1")
        return cls("sequence", abs(q) if q else None, lambda n: c * q ** n,
                   f"{c} * ({q})^n")

    def to_json(self):
        out = {"kind": self.kind}
        if self.omega is not None:
            out["omega"] = str(self.omega)
        if self.description:
            out["description"] = self.description
        return out


@dataclass(eq=False)
class DominantSpectrum:
    mode: str                                   # "recurrence" | "root_form"
    modulus_sq: Optional[Real]
    D: int
    positive_real: Optional[RealCoefficient] = None
    negative_real: Optional[RealCoefficient] = None
    pairs: list = field(default_factory=list)
    remainder: RemainderModel = field(default_factory=lambda: RemainderModel("zero"))
    lower_degree_folded: bool = False
    source: object = None
    modulus_sq_root: Optional[AlgebraicRoot] = None

    @property
    def is_zero(self) -> bool:
        return self.modulus_sq is None

    @property
    def root_count(self) -> int:
        return 2 * len(self.pairs) + (self.positive_real is not None) + (self.negative_real is not None)

    def oscillating_terms(self) -> list:
        """Pairs plus the negative real root as a pair at angle 1/2."""
        out = list(self.pairs)
        if self.negative_real is not None:
            # c (-1)^n as a pair term: half of c on each of the two coinciding members
            c = self.negative_real.exact
            out.append(DominantPair(AngleDescriptor.of_rational(Fraction(1, 2)),
                                    self.negative_real.value if c is None else Real.rational(c),
                                    Real.rational(Fraction(1, 4)),
                                    coefficient=None if c is None else (c / 2, Fraction(0))))
        return out

    def trig_part(self, n: int, bits: int = 64) -> Interval:
        """b(n): the oscillating part of the normalised dominant sum."""
        acc = Interval.exact(0)
        for p in self.oscillating_terms():
            acc = acc + p.value(n, bits)
        return acc

    def main_part(self, n: int, bits: int = 64) -> Interval:
        c0 = self.positive_real.value.interval(bits) if self.positive_real else Interval.exact(0)
        return c0 + self.trig_part(n, bits)

    def exact_main_part(self, n: int) -> Optional[CyclotomicNumber]:
        terms = self.oscillating_terms()
        if not all(p.angle.is_rational for p in terms):
            return None
        dens = [p.angle.denominator for p in terms]
        dens += [p.phi_turns.exact.denominator for p in terms if p.phi_turns.exact is not None]
        M = 4 * lcm(*dens) if dens else 4
        acc = CyclotomicNumber.zero(M)
        if self.positive_real is not None:
            if self.positive_real.exact is None:
                return None
            acc = acc + CyclotomicNumber.rational(M, self.positive_real.exact)
        for p in terms:
            v = p.exact_value(n, acc.M)
            if v is None:
                return None
            acc = acc + v
        return acc

    def to_json(self):
        out = {"mode": self.mode, "D": self.D, "dominating_roots": self.root_count,
               "pairs": [p.to_json() for p in self.pairs], "remainder": self.remainder.to_json()}
        if self.modulus_sq is not None:
            out["modulus_squared"] = _real_json(self.modulus_sq)
        if self.positive_real:
            out["positive_real"] = self.positive_real.to_json()
        if self.negative_real:
            out["negative_real"] = self.negative_real.to_json()
        if self.lower_degree_folded:
            out["lower_degree_folded"] = True
        return out


def _box_real(box_fn, label: str) -> Real:
    return Real(lambda bits: box_fn(bits).re, label=label)


def _pair_from_gaussian_like(angle: AngleDescriptor, c_box_fn, c_exact_root,
                             gaussian: Optional[tuple], root=None) -> DominantPair:
    """Build (w, phi) from a coefficient with Im c >= 0 (exactly)."""
    if gaussian is not None:
        re, im = gaussian
        if im == 0:
            return DominantPair(angle, Real.rational(2 * re), Real.rational(Fraction(1, 4)), gaussian, root)
        w = Real(lambda bits: -2 * sqrt_interval(Interval.exact(re * re + im * im), bits + 8).rounded(bits + 8),
                 label="w")
        special = {0: Fraction(0)} if re == 0 else ({1: Fraction(7, 8), -1: Fraction(1, 8)}.get(re / im))
        if re == 0:
            phi = Real.rational(0)
        elif special is not None:
            phi = Real.rational(special)
        else:
            phi = Real(lambda bits: _arg_turns_box(ComplexBox.exact(re, im), bits) - Fraction(1, 4), label="phi")
        return DominantPair(angle, w, phi, gaussian, root)
    c = c_exact_root
    if c.is_real:
        v = _box_real(c_box_fn, "c")
        return DominantPair(angle, 2 * v, Real.rational(Fraction(1, 4)), c, root)
    abs2 = modulus_squared(c)
    w = Real(lambda bits: -2 * sqrt_interval(abs2.enclosure(bits + 8).re, bits + 8).rounded(bits + 8), label="w")
    arg = angle_of_root(c)
    if arg.is_rational:
        phi = Real.rational((arg.rational - Fraction(1, 4)) % 1)
    else:
        phi = Real(lambda bits: arg.enclosure(bits) - Fraction(1, 4), label="phi")
    return DominantPair(angle, w, phi, c, root)


def _arg_turns_box(box: ComplexBox, bits: int) -> Interval:
    a = atan2_interval(box.im, box.re, bits + 8) / (2 * pi_interval(bits + 8))
    return a.rounded(bits + 4)


def _omega_between(ratio_sq: Real) -> Fraction:
    """A rational omega with sqrt(ratio_sq) < omega < 1 (ratio_sq < 1 known)."""
    for bits in ladder(None):
        hi = ratio_sq.interval(bits).hi
        if hi < 1:
            root_hi = sqrt_interval(Interval.exact(hi), bits).hi
            if root_hi < 1:
                mid = (root_hi + 1) / 2
                short = mid.limit_denominator(1 << 20)
                return short if root_hi < short < 1 else mid
    raise PrecisionExhausted("remainder ratio undecided")


def dominating_spectrum(psf: PowerSumForm, budget: Optional[int] = None) -> DominantSpectrum:
    live = psf.nonzero_terms()
    if not live:
        return DominantSpectrum("recurrence", None, -1, source=psf.source)
    mods = [modulus_squared(t.root) for t in live]
    best = 0
    for k in range(1, len(live)):
        if compare_real(mods[k], mods[best], budget) > 0:
            best = k
    top = [k for k in range(len(live)) if compare_real(mods[k], mods[best], budget) == 0]
    D = max(live[k].degree for k in top)
    dom = [live[k] for k in top if live[k].degree == D]
    folded = any(live[k].degree < D for k in top)
    rest = [k for k in range(len(live)) if k not in top]
    ms = mods[best]
    mod_real = Real(lambda bits: ms.enclosure(bits).re, label="|alpha|^2")
    if folded:
        remainder = RemainderModel("polynomial", description="lower-degree terms of equal modulus")
    elif rest:
        second = max(rest, key=lambda k: mods[k].approx().real)
        for k in rest:
            if compare_real(mods[k], mods[second], budget) > 0:
                second = k
        mk = mods[second]
        ratio = Real(lambda bits: (mk.enclosure(bits).re / ms.enclosure(bits).re).rounded(bits + 8))
        remainder = RemainderModel("exponential", _omega_between(ratio), description="smaller roots")
    else:
        remainder = RemainderModel("zero")
    spec = DominantSpectrum("recurrence", mod_real, D, remainder=remainder,
                            lower_degree_folded=folded, source=psf.source, modulus_sq_root=ms)
    for t in dom:
        h = t.coeff_polys[D]
        r = t.root
        extra = _coeff_bits(h)

        def cbox(bits, r=r, h=h, extra=extra):
            return horner_box(h, r.enclosure(bits + extra), bits + extra)

        if r.is_real:
            c = t.coefficient(D)
            sgn = sign_of_real(c, budget)
            rc = RealCoefficient(_box_real(cbox, "c"), sgn, c.value if c.is_rational else None)
            if sign_of_real(r, budget) > 0:
                spec.positive_real = rc
            else:
                spec.negative_real = rc
            continue
        if not r.upper:
            continue  # the pair is built from its upper member
        c = t.coefficient(D)
        if c.is_real or sign_of_real_im(c, budget) > 0:
            rep, crep, fn = r, c, cbox
        else:
            rep, crep = r.conj(), c.conj()

            def fn(bits, base=cbox):
                return base(bits).conj()
        angle = angle_of_root(rep)
        spec.pairs.append(_pair_from_gaussian_like(angle, fn, crep, None, rep))
    return spec


def sign_of_real_im(c: AlgebraicRoot, budget: Optional[int] = None) -> int:
    """Sign of Im c for a non-real algebraic c (never zero)."""
    for bits in ladder(budget, start=16):
        s = c.enclosure(bits).im.sign()
        if s:
            return s
    raise PrecisionExhausted("imaginary part undecided")


# --- root-form input ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RootTerm:
    """One real root or one conjugate pair, given directly.

    ``kind`` is "positive_real", "negative_real" or "pair". A pair carries
    either a Gaussian-rational coefficient (``coefficient``) of the member at
    angle ``angle``, or the reduced amplitude/phase ``w`` and ``phi_turns``.
    """

    kind: str
    modulus: Fraction
    angle: Optional[AngleDescriptor] = None
    coefficient: Optional[tuple] = None
    w: Optional[Fraction] = None
    phi_turns: Optional[Fraction] = None

    def __post_init__(self):
        if self.modulus <= 0:
            raise ValueError("moduli must be positive")
        if self.kind == "pair":
            if self.angle is None:
                raise ValueError("a pair needs an angle")
            if (self.coefficient is None) == (self.w is None):
                raise ValueError("a pair needs either a coefficient or (w, phi)")
            if self.w is not None and self.phi_turns is None:
                raise ValueError("w needs phi_turns")
            if self.angle.is_rational and self.angle.rational in (0, Fraction(1, 2)):
                raise ValueError("a pair at angle 0 or 1/2 is a real root; list it as such")
        elif self.kind in ("positive_real", "negative_real"):
            if self.coefficient is None or self.coefficient[1] != 0:
                raise ValueError("real roots need a real coefficient")
        else:
            raise ValueError(f"unknown term kind {self.kind!r}")

    @property
    def is_zero(self) -> bool:
        if self.w is not None:
            return self.w == 0
        return self.coefficient == (0, 0)

    def as_pair(self) -> DominantPair:
        if self.w is not None:
            return DominantPair(self.angle, Real.rational(self.w), Real.rational(self.phi_turns % 1))
        re, im = self.coefficient
        angle = self.angle
        if im < 0:
            angle, im = angle.negated(), -im
        return _pair_from_gaussian_like(angle, None, None, (re, im))

    def normalised_value(self, n: int, scale: Fraction, bits: int) -> Interval:
        """The term at n divided by top_modulus^n."""
        f = (self.modulus / scale) ** n
        if self.kind == "positive_real":
            return Interval.exact(self.coefficient[0] * f)
        if self.kind == "negative_real":
            return Interval.exact(self.coefficient[0] * (-f if n % 2 else f))
        return (self.as_pair().value(n, bits) * f).rounded(bits + 4)


@dataclass(eq=False)
class RootFormSpec:
    terms: list
    remainder: Optional[RemainderModel] = None

    @property
    def top_modulus(self) -> Optional[Fraction]:
        live = [t.modulus for t in self.terms if not t.is_zero]
        return max(live) if live else None

    def normalised_value(self, n: int, bits: int = 64) -> Interval:
        """a(n) / top_modulus^n, including a sequence remainder."""
        top = self.top_modulus
        acc = Interval.exact(0)
        if top is not None:
            for t in self.terms:
                if not t.is_zero:
                    acc = acc + t.normalised_value(n, top, bits)
        if self.remainder is not None and self.remainder.values is not None:
            acc = acc + self.remainder.values(n)
        return acc


def root_form_spectrum(spec: RootFormSpec) -> DominantSpectrum:
    top = spec.top_modulus
    if top is None:
        return DominantSpectrum("root_form", None, -1, remainder=spec.remainder or RemainderModel("zero"),
                                source=spec)
    kinds = [t.kind for t in spec.terms if not t.is_zero and t.modulus == top]
    for k in ("positive_real", "negative_real"):
        if kinds.count(k) > 1:
            raise HypothesisViolation(f"more than one dominating {k.replace('_', ' ')} term")
    lower = [t.modulus for t in spec.terms if not t.is_zero and t.modulus < top]
    if spec.remainder is not None and lower:
        # exact remainder values no longer describe everything left: keep only the bound
        omega = max(max(lower) / top, spec.remainder.omega or Fraction(0))
        remainder = RemainderModel("exponential", omega,
                                   description=spec.remainder.description + " + smaller terms")
    elif spec.remainder is not None:
        remainder = spec.remainder
    elif lower:
        remainder = RemainderModel("exponential", max(lower) / top, description="smaller terms")
    else:
        remainder = RemainderModel("zero")
    out = DominantSpectrum("root_form", Real.rational(top * top), 0, remainder=remainder, source=spec)
    for t in spec.terms:
        if t.is_zero or t.modulus != top:
            continue
        if t.kind == "pair":
            out.pairs.append(t.as_pair())
        else:
            c = t.coefficient[0]
            rc = RealCoefficient(Real.rational(c), (c > 0) - (c < 0), c)
            if t.kind == "positive_real":
                out.positive_real = rc
            else:
                out.negative_real = rc
    return out
