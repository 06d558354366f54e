"""Angles of dominating roots, the three-case split of angle pairs, and the
square-hitting decisions that turn a case into an oscillation certificate.

An angle is always stored in turns, xi = theta / 2pi, reduced to [0, 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Optional

from .exactnum import (
    AlgebraicRoot,
    HypothesisViolation,
    Interval,
    PrecisionExhausted,
    Real,
    power,
    root_of_unity_order,
    same_number,
    unit_ratio,
)
from .exactnum.real import atan2_interval, ladder, pi_interval
from .unitlattice import hitting_indices

RATIONAL, IRRATIONAL, APPROXIMATE = "rational", "irrational", "approximate"
DEFAULT_RELATION_BOUND = 50


def _frac_part(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


def _arg_turns(box_fn, bits: int) -> Interval:
    """arg(z)/2pi in [0, 1) for a non-real z known through boxes."""
    for b in ladder(None, start=max(bits, 16)):
        box = box_fn(b)
        s = box.im.sign()
        if s:
            a = atan2_interval(box.im, box.re, bits + 8) / (2 * pi_interval(bits + 8))
            a = a.rounded(bits + 4)
            return a + 1 if s < 0 else a
    raise PrecisionExhausted("argument of a non-real number undecided")


@dataclass(frozen=True, eq=False)
class AngleDescriptor:
    """xi = theta/2pi, either an exact rational, an irrational number pinned
    by exact data (``ratio`` = exp(4 pi i xi) as an algebraic number), or an
    approximate enclosure carrying no exactness claim."""

    kind: str
    rational: Optional[Fraction] = None
    ratio: Optional[AlgebraicRoot] = None
    xi: Optional[Real] = None

    @classmethod
    def of_rational(cls, q) -> "AngleDescriptor":
        q = _frac_part(Fraction(q))
        return cls(RATIONAL, rational=q, xi=Real.rational(q))

    @classmethod
    def of_irrational(cls, ratio: AlgebraicRoot, xi: Real) -> "AngleDescriptor":
        return cls(IRRATIONAL, ratio=ratio, xi=xi)

    @classmethod
    def of_approximate(cls, enclosure: Interval) -> "AngleDescriptor":
        return cls(APPROXIMATE, xi=Real.from_interval(enclosure, label="approximate angle"))

    @property
    def is_rational(self) -> bool:
        return self.kind == RATIONAL

    @property
    def denominator(self) -> int:
        return self.rational.denominator

    def enclosure(self, bits: int) -> Interval:
        return self.xi.interval(bits)

    def negated(self) -> "AngleDescriptor":
        """The angle of the complex conjugate: xi -> 1 - xi (mod 1)."""
        if self.kind == RATIONAL:
            return AngleDescriptor.of_rational(-self.rational)
        if self.kind == IRRATIONAL:
            return AngleDescriptor.of_irrational(self.ratio.conj(), 1 - self.xi)
        return AngleDescriptor(APPROXIMATE, xi=1 - self.xi)

    def to_json(self):
        if self.kind == RATIONAL:
            return {"rational": str(self.rational)}
        iv = self.enclosure(64)
        body = {"lo": str(iv.lo), "hi": str(iv.hi), "approx": float(iv.mid)}
        if self.kind == IRRATIONAL:
            body["ratio_poly"] = str(self.ratio.defining)
        return {self.kind: body}

    def __repr__(self):
        if self.kind == RATIONAL:
            return f"Angle({self.rational})"
        return f"Angle({self.kind}, ~{self.xi.approx():.12g})"


def angle_of_root(alpha: AlgebraicRoot) -> AngleDescriptor:
    """arg(alpha)/2pi as exact data.

    alpha/conj(alpha) has argument 2 arg(alpha); when it is a primitive n-th
    root of unity, e^(2 pi i k/n), xi is k/2n or k/2n + 1/2, pinned by the box.
    """
    if alpha.is_real:
        if alpha.is_rational:
            return AngleDescriptor.of_rational(0 if alpha.value > 0 else Fraction(1, 2))
        lo = alpha.box.re
        return AngleDescriptor.of_rational(0 if lo.lo > 0 else Fraction(1, 2)) \
            if lo.sign() else _real_irrational_angle(alpha)
    ratio = unit_ratio(alpha)
    xi = Real(lambda bits: _arg_turns(alpha.enclosure, bits), label="xi")
    order = root_of_unity_order(ratio)
    if order is None:
        return AngleDescriptor.of_irrational(ratio, xi)
    k, n = order
    cands = [Fraction(k, 2 * n), Fraction(k, 2 * n) + Fraction(1, 2)]
    for bits in ladder(None):
        e = xi.interval(bits)
        hits = [q for q in cands if e.contains(q)]
        if len(hits) == 1:
            return AngleDescriptor.of_rational(hits[0])
    raise PrecisionExhausted("could not pin a rational angle")


def _real_irrational_angle(alpha: AlgebraicRoot) -> AngleDescriptor:
    for bits in ladder(None):
        s = alpha.enclosure(bits).re.sign()
        if s:
            return AngleDescriptor.of_rational(0 if s > 0 else Fraction(1, 2))
    raise PrecisionExhausted("sign of a real root undecided")


def angle_of_unit(beta: AlgebraicRoot) -> AngleDescriptor:
    """arg(beta)/2pi for an algebraic number of modulus one."""
    order = root_of_unity_order(beta)
    if order is not None:
        return AngleDescriptor.of_rational(Fraction(*order))
    xi = Real(lambda bits: _arg_turns(beta.enclosure, bits), label="xi")
    return AngleDescriptor.of_irrational(power(beta, 2), xi)


# --- relation search ---------------------------------------------------------

@dataclass(frozen=True)
class RelationReport:
    case: str                          # "Case1" | "Case2" | "Case3"
    relation: Optional[tuple] = None   # (u1, u2, v): u1 xi1 + u2 xi2 = v
    search_bound: int = DEFAULT_RELATION_BOUND
    certainty: str = "Proved"          # "Proved" | "UpToBound"
    fractions: Optional[tuple] = None

    def to_json(self):
        out = {"case": self.case, "certainty": self.certainty, "search_bound": self.search_bound}
        if self.relation is not None:
            out["relation"] = list(self.relation)
        if self.fractions is not None:
            out["fractions"] = [str(q) for q in self.fractions]
        return out


def _normalise(u1: int, u2: int, v: int) -> tuple:
    g = gcd(gcd(u1, u2), v) or 1
    u1, u2, v = u1 // g, u2 // g, v // g
    if u1 < 0 or (u1 == 0 and u2 < 0):
        u1, u2, v = -u1, -u2, -v
    return u1, u2, v


def _candidates(U: int):
    """(u1, u2) with max(|u1|, |u2|) <= U, smallest first, first nonzero entry positive."""
    for r in range(1, U + 1):
        ring = [(a, b) for a, b in product(range(-r, r + 1), repeat=2)
                if max(abs(a), abs(b)) == r and (a > 0 or (a == 0 and b > 0))]
        ring.sort(key=lambda p: (abs(p[0]) + abs(p[1]), p))
        yield from ring


def _integer_near(x: Interval) -> Optional[int]:
    """The unique integer inside x when x is narrow, else None."""
    lo = -((-x.lo.numerator) // x.lo.denominator)
    hi = x.hi.numerator // x.hi.denominator
    return lo if lo == hi else None


def _verify_relation(r1: AlgebraicRoot, r2: AlgebraicRoot, u1: int, u2: int) -> bool:
    """Exact check that rho1^u1 * rho2^u2 = 1."""
    return same_number(power(r1, u1), power(r2, -u2))


def classify_pair(x1: AngleDescriptor, x2: AngleDescriptor,
                  U: int = DEFAULT_RELATION_BOUND) -> RelationReport:
    if U < 1:
        raise ValueError("relation search bound must be positive")
    if x1.is_rational and x2.is_rational:
        return RelationReport("Case3", search_bound=U, fractions=(x1.rational, x2.rational))
    if x1.is_rational or x2.is_rational:
        if x1.kind == APPROXIMATE or x2.kind == APPROXIMATE:
            q = x1.rational if x1.is_rational else x2.rational
            rel = (q.denominator, 0, q.numerator) if x1.is_rational else (0, q.denominator, q.numerator)
            return RelationReport("Case2", _normalise(*rel), U, "UpToBound")
        q = x1.rational if x1.is_rational else x2.rational
        rel = (q.denominator, 0, q.numerator) if x1.is_rational else (0, q.denominator, q.numerator)
        return RelationReport("Case2", _normalise(*rel), U, "Proved")
    exact = x1.kind == IRRATIONAL and x2.kind == IRRATIONAL
    bits = 64
    e1, e2 = x1.enclosure(bits), x2.enclosure(bits)
    for u1, u2 in _candidates(U):
        if u1 == 0 or u2 == 0:
            continue  # an irrational angle has no multiple in Z
        val = e1 * u1 + e2 * u2
        lo = -((-val.lo.numerator) // val.lo.denominator)
        if lo > val.hi:
            continue
        if not exact:
            t = _integer_near(val)
            if t is not None:
                return RelationReport("Case2", _normalise(u1, u2, t), U, "UpToBound")
            continue
        if not _verify_relation(x1.ratio, x2.ratio, u1, u2):
            continue
        # rho-relation gives 2(u1 xi1 + u2 xi2) in Z; pin that integer
        for b in ladder(None, start=bits):
            twice = (x1.enclosure(b) * u1 + x2.enclosure(b) * u2) * 2
            k = _integer_near(twice)
            if k is not None and twice.width < Fraction(1, 2):
                break
        else:
            raise PrecisionExhausted("relation constant undecided")
        rel = (u1, u2, k // 2) if k % 2 == 0 else (2 * u1, 2 * u2, k)
        return RelationReport("Case2", _normalise(*rel), U, "Proved")
    return RelationReport("Case1", None, U, "UpToBound")


# --- square hitting ----------------------------------------------------------

@dataclass
class HitVerdict:
    outcome: str                    # "InfinitelyManyHits" | "NoHits" | "UnknownAtBound"
    epsilon: Optional[Fraction] = None
    witnesses: list = field(default_factory=list)
    period: Optional[int] = None
    case_used: str = ""
    note: str = ""

    def to_json(self):
        out = {"outcome": self.outcome, "case_used": self.case_used}
        if self.epsilon is not None:
            out["epsilon"] = str(self.epsilon)
        if self.witnesses:
            out["residues"] = self.witnesses
            out["period"] = self.period
        if self.note:
            out["note"] = self.note
        return out


def _check_theorem_angles(x1: AngleDescriptor, x2: AngleDescriptor, rel: RelationReport):
    for x in (x1, x2):
        if x.is_rational and x.rational in (0, Fraction(1, 2)):
            raise HypothesisViolation(
                f"angle {x.rational} is excluded here; use half_angle_hit for a negative real root")
    if rel.case == "Case3" and (x1.rational == x2.rational or x1.rational + x2.rational == 1):
        raise HypothesisViolation("need xi1 != +-xi2 (mod 1)")
    if rel.case == "Case2" and rel.relation is not None:
        u1, u2, _ = rel.relation
        if abs(u1) == 1 and abs(u2) == 1:
            raise HypothesisViolation("need xi1 != +-xi2 (mod 1)")


def _as_real(c) -> Real:
    return c if isinstance(c, Real) else Real.rational(c)


def _torus_gap_interval(x: Interval) -> Interval:
    """Enclosure of the distance from x to Z, for narrow x."""
    k = round(x.mid)
    return (x - k).abs()


def hits_square(x1: AngleDescriptor, x2: AngleDescriptor, c, rel: RelationReport,
                budget: Optional[int] = None) -> HitVerdict:
    """Do infinitely many n(xi1, xi2) mod 1 fall in the open square of
    half-side 1/4 around c (mod 1)? The centre may be irrational (``Real``)."""
    _check_theorem_angles(x1, x2, rel)
    c1, c2 = _as_real(c[0]), _as_real(c[1])
    if rel.case == "Case1":
        return HitVerdict("InfinitelyManyHits", Fraction(1, 8), case_used="density in the unit square",
                          note="existential; linear independence holds up to the relation bound")
    if rel.case == "Case2":
        u1, u2, _ = rel.relation
        h = Fraction(abs(u1) + abs(u2), 4)
        for bits in ladder(budget):
            m = c1.interval(bits) * u1 + c2.interval(bits) * u2
            t = round(m.mid)
            dist = (m - t).abs()
            if dist.hi < h:
                eps = (h - dist.hi) / (abs(u1) + abs(u2)) / 2
                return HitVerdict("InfinitelyManyHits", eps, case_used="density on the relation lines",
                                  note=f"lines {u1}x1 + {u2}x2 = t, t in Z")
            if (m - t).abs().lo >= h and m.width < Fraction(1, 4):
                nearest = min(abs(m.lo - round(m.lo)), abs(m.hi - round(m.hi)))
                if nearest >= h:
                    return HitVerdict("NoHits", case_used="density on the relation lines")
        return HitVerdict("UnknownAtBound", case_used="density on the relation lines")
    a1, b1 = x1.rational.numerator, x1.rational.denominator
    a2, b2 = x2.rational.numerator, x2.rational.denominator
    period = lcm(b1, b2)
    if c1.exact is not None and c2.exact is not None:
        hits = hitting_indices(a1, b1, a2, b2, (c1.exact, c2.exact))
        if not hits:
            return HitVerdict("NoHits", period=period, case_used="finite orbit")
        best = max(Fraction(1, 4) - max(_gap(Fraction(n * a1, b1) - c1.exact),
                                        _gap(Fraction(n * a2, b2) - c2.exact)) for n in hits)
        return HitVerdict("InfinitelyManyHits", best / 2, hits, period, "finite orbit")
    for bits in ladder(budget):
        e1, e2 = c1.interval(bits), c2.interval(bits)
        inside, undecided, best = [], False, Fraction(0)
        for n in range(period):
            g1 = _torus_gap_interval(Fraction(n * a1, b1) - e1)
            g2 = _torus_gap_interval(Fraction(n * a2, b2) - e2)
            worst = Interval(max(g1.lo, g2.lo), max(g1.hi, g2.hi))
            if worst.hi < Fraction(1, 4):
                inside.append(n)
                best = max(best, Fraction(1, 4) - worst.hi)
            elif worst.lo < Fraction(1, 4):
                undecided = True
        if inside:
            return HitVerdict("InfinitelyManyHits", best / 2, inside, period, "finite orbit")
        if not undecided:
            return HitVerdict("NoHits", period=period, case_used="finite orbit")
    return HitVerdict("UnknownAtBound", period=period, case_used="finite orbit")


def _gap(d: Fraction) -> Fraction:
    d = _frac_part(d)
    return min(d, 1 - d)


def half_angle_hit(x1: AngleDescriptor, c1, budget: Optional[int] = None):
    """For the pair (xi1, 1/2): a second centre coordinate c2 and margin eps
    such that infinitely many n(xi1, 1/2) mod 1 lie in the square around
    (c1, c2) shrunk by eps. Returns (c2, eps, HitVerdict)."""
    if x1.is_rational and x1.rational in (0, Fraction(1, 2)):
        raise HypothesisViolation("xi1 must avoid 0 and 1/2")
    c1 = _as_real(c1)
    if not x1.is_rational:
        return Fraction(0), Fraction(1, 8), HitVerdict(
            "InfinitelyManyHits", Fraction(1, 8), case_used="density of n xi1 mod 1",
            note="existential; c2 arbitrary in {0, 1/2}")
    a, b = x1.rational.numerator, x1.rational.denominator
    for bits in ladder(budget):
        e = c1.interval(bits)
        for k in range(b):
            gap = _torus_gap_interval(Fraction(k, b) - e)
            if gap.hi < Fraction(1, 4):
                n0 = (k * pow(a, -1, b)) % b
                c2 = Fraction(n0 % 2, 2)
                eps = (Fraction(1, 4) - gap.hi) / 2
                period = 2 * b if b % 2 else b
                hits = sorted({n for n in (n0, n0 + b) if n < period and (n % 2) / 2 == c2})
                return c2, eps, HitVerdict("InfinitelyManyHits", eps, hits, period,
                                           "finite orbit of n xi1 with spacing 1/b")
    raise PrecisionExhausted("half-angle hit undecided")
