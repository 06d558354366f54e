"""Finite multiple sets on the unit torus and the empty-square question.

Coordinates are kept scaled: a point (u1/b1, u2/b2) is stored as (u1, u2).
Looking for an empty open square of half-side 1/4 on the torus is then the
same as looking for an empty open b1/2 x b2/2 rectangle in the periodic grid.
Such a rectangle may be slid left and down until its edges sit on integers
without picking up a point, so only integer corner placements need checking.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional

from ..exactnum import PI_LO, HypothesisViolation
from . import _accel
from .lattice import (
    LatticeBasis2,
    LgLattice,
    bender_guarantee,
    membership,
    pair_inequality,
    short_vector_bound,
    successive_minima,
)


@dataclass(frozen=True)
class TorusPointSet:
    b1: int
    b2: int
    points: frozenset

    def as_fractions(self) -> list:
        return sorted((Fraction(u1, self.b1), Fraction(u2, self.b2)) for u1, u2 in self.points)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class TorusSquare:
    center: tuple
    half_side: Fraction = Fraction(1, 4)

    def __post_init__(self):
        if self.half_side <= 0:
            raise ValueError("half_side must be positive")

    def contains(self, x, y) -> bool:
        return (_torus_gap(Fraction(x) - self.center[0]) < self.half_side
                and _torus_gap(Fraction(y) - self.center[1]) < self.half_side)


def _torus_gap(d: Fraction) -> Fraction:
    """Distance from d to the nearest integer."""
    d = d - (d.numerator // d.denominator)
    return min(d, 1 - d)


def multiples_mod1(a1: int, b1: int, a2: int, b2: int) -> TorusPointSet:
    """{n (a1/b1, a2/b2) mod 1}, iterating n until the orbit repeats."""
    if b1 < 1 or b2 < 1:
        raise ValueError("denominators must be positive")
    if gcd(a1, b1) != 1 or gcd(a2, b2) != 1:
        raise ValueError("numerators must be coprime to their denominators")
    pts = set()
    u = (0, 0)
    while u not in pts:
        pts.add(u)
        u = ((u[0] + a1) % b1, (u[1] + a2) % b2)
    return TorusPointSet(b1, b2, frozenset(pts))


def multiples_from_lattice(a1: int, b1: int, a2: int, b2: int) -> TorusPointSet:
    """The same set read off L_g(a1, a2), g = gcd(b1, b2), inside the box [0,b1) x [0,b2)."""
    g = gcd(b1, b2)
    L = LgLattice(g, a1 % g, a2 % g)
    pts = frozenset((u1, u2) for u1 in range(b1) for u2 in range(b2) if membership(L, (u1, u2)))
    return TorusPointSet(b1, b2, pts)


def apply_s(ps: TorusPointSet) -> TorusPointSet:
    """x1 -> (1 - x1) mod 1."""
    return TorusPointSet(ps.b1, ps.b2, frozenset(((-u1) % ps.b1, u2) for u1, u2 in ps.points))


def apply_tau(ps: TorusPointSet) -> TorusPointSet:
    """Swap the coordinates (and the denominators with them)."""
    return TorusPointSet(ps.b2, ps.b1, frozenset((u2, u1) for u1, u2 in ps.points))


def check_hypotheses(a1: int, b1: int, a2: int, b2: int) -> None:
    if not (2 <= b2 <= b1):
        raise HypothesisViolation("need 2 <= b2 <= b1")
    if not (1 <= a1 < b1 and 1 <= a2 < b2):
        raise HypothesisViolation("need 1 <= a_k < b_k")
    if gcd(a1, b1) != 1 or gcd(a2, b2) != 1:
        raise HypothesisViolation("need gcd(a_k, b_k) = 1")
    x1, x2 = Fraction(a1, b1), Fraction(a2, b2)
    if x1 == x2 or x1 + x2 == 1:
        raise HypothesisViolation("need a1/b1 != +-a2/b2 (mod 1)")


def _half_steps(b: int) -> int:
    """Integer columns strictly inside an open interval of length b/2 with integer left end."""
    return -(-b // 2) - 1


@dataclass(frozen=True)
class EmptySquare:
    """An empty open square: unit-square centre plus the scaled corner placement."""

    center: tuple
    scaled_corner: tuple
    b: tuple

    @property
    def scaled_center(self) -> tuple:
        return (self.scaled_corner[0] + Fraction(self.b[0], 4),
                self.scaled_corner[1] + Fraction(self.b[1], 4))


def empty_square_witness(a1: int, b1: int, a2: int, b2: int,
                         check: bool = True) -> Optional[EmptySquare]:
    """Centre of an open half-side-1/4 torus square avoiding every n(a1/b1, a2/b2),
    or None. The lexicographically smallest integer corner placement is reported."""
    if check:
        check_hypotheses(a1, b1, a2, b2)
    occ = _accel.orbit_grid(a1, b1, a2, b2)
    found = _accel.empty_windows(occ, b1, b2, _half_steps(b1), _half_steps(b2), True)
    if not found:
        return None
    x0, y0 = found[0]
    center = ((Fraction(x0, b1) + Fraction(1, 4)) % 1, (Fraction(y0, b2) + Fraction(1, 4)) % 1)
    return EmptySquare(center, (x0, y0), (b1, b2))


def is_square_empty(a1: int, b1: int, a2: int, b2: int, center, half_side=Fraction(1, 4)) -> bool:
    """Exact membership test of every orbit point against the open torus square."""
    sq = TorusSquare((Fraction(center[0]), Fraction(center[1])), Fraction(half_side))
    ps = multiples_mod1(a1, b1, a2, b2)
    return not any(sq.contains(Fraction(u1, b1), Fraction(u2, b2)) for u1, u2 in ps.points)


def hitting_indices(a1: int, b1: int, a2: int, b2: int, center, half_side=Fraction(1, 4)) -> list:
    """All n in one period whose multiple lies in the open torus square."""
    sq = TorusSquare((Fraction(center[0]), Fraction(center[1])), Fraction(half_side))
    period = b1 // gcd(b1, b2) * b2
    return [n for n in range(period)
            if sq.contains(Fraction(n * a1 % b1, b1), Fraction(n * a2 % b2, b2))]


# --- equal denominators: every square of side g/2 meets L_g(a1, a2) ---------

def symmetry_orbit(g: int, a1: int, a2: int) -> set:
    """Pairs reachable by the s and tau symmetries (a1 -> -a1, swap)."""
    out, todo = set(), [(a1 % g, a2 % g)]
    while todo:
        p = todo.pop()
        if p in out:
            continue
        out.add(p)
        x, y = p
        todo.extend([(y, x), ((-x) % g, y), (x, (-y) % g)])
    return out


def lattice_parameter(g: int, a1: int, a2: int) -> int:
    """t with L_g(a1, a2) = L_g(1, t)."""
    return (a2 * pow(a1, -1, g)) % g


def canonical_form(g: int, a1: int, a2: int) -> tuple:
    """The lattice up to symmetry: min of t, -t, 1/t, -1/t (mod g)."""
    t = lattice_parameter(g, a1, a2)
    ti = pow(t, -1, g)
    return min(t, (-t) % g, ti, (-ti) % g)


SMALL_G_REPRESENTATIVES = {7: (1, 3), 8: (3, 1), 9: (2, 1)}


def exhaustive_square_hit(g: int, a1: int, a2: int) -> Optional[tuple]:
    """Corner of an empty open square of side g/2 in L_g(a1, a2), or None."""
    occ = _accel.lattice_grid(g, a1, a2, g, g)
    k = _half_steps(g)
    found = _accel.empty_windows(occ, g, g, k, k, True)
    return found[0] if found else None


@lru_cache(maxsize=None)
def _small_g_table() -> dict:
    """Representative canonical form -> verified, for g = 7, 8, 9."""
    table = {}
    for g, (a1, a2) in SMALL_G_REPRESENTATIVES.items():
        table[(g, canonical_form(g, a1, a2))] = exhaustive_square_hit(g, a1, a2) is None
    return table


@dataclass
class AlwaysHitReport:
    g: int
    a: tuple
    certified: bool
    branch: str
    data: dict = field(default_factory=dict)


def _check_equal_denominators(g: int, a1: int, a2: int) -> None:
    if g < 3:
        raise HypothesisViolation("need g >= 3")
    if gcd(a1, g) != 1 or gcd(a2, g) != 1:
        raise HypothesisViolation("need gcd(a_k, g) = 1")
    if (a1 - a2) % g == 0 or (a1 + a2) % g == 0:
        raise HypothesisViolation("need a1 != +-a2 (mod g)")


def square_always_hit(g: int, a1: int, a2: int) -> AlwaysHitReport:
    """Certify that every open square of side g/2 contains a point of L_g(a1, a2),
    following the successive-minima argument and naming the branch used:
    small-g table, bender, short-vector, or exhaustive."""
    _check_equal_denominators(g, a1, a2)
    a = (a1, a2)
    if g in SMALL_G_REPRESENTATIVES:
        form = canonical_form(g, a1, a2)
        ok = _small_g_table().get((g, form))
        if ok is None:
            raise AssertionError(f"L_{g}{a} is not equivalent to the tabulated representative")
        return AlwaysHitReport(g, a, ok, "small-g table",
                               {"representative": SMALL_G_REPRESENTATIVES[g], "canonical_t": form})
    if g < 10:
        corner = exhaustive_square_hit(g, a1, a2)
        return AlwaysHitReport(g, a, corner is None, "exhaustive",
                               {"empty_corner": corner})
    L = LgLattice(g, a1, a2)
    m = successive_minima(L)
    data = {"lambda1_sq": m.lambda1_sq, "lambda2_sq": m.lambda2_sq,
            "w1": m.w1, "w2": m.w2}
    side = Fraction(g, 2)
    if 16 * m.lambda2_sq < g * g:
        basis = LatticeBasis2(m.w1, m.w2)
        if abs(basis.det) == g and bender_guarantee(basis, side):
            data["basis"] = (basis.v1, basis.v2)
            return AlwaysHitReport(g, a, True, "bender", data)
    # lambda2 >= g/4 forces lambda1 <= 16/pi by Minkowski
    if m.lambda1_sq * PI_LO * PI_LO <= 256:
        r = tuple(sorted((abs(m.w1[0]), abs(m.w1[1])), reverse=True))
        data["r"] = r
        if gcd(*r) == 1 and r[1] > 0 and pair_inequality(r, g):
            bound = short_vector_bound(r, g)
            data["short_vector_bound"] = bound
            if side > bound:
                return AlwaysHitReport(g, a, True, "short-vector", data)
    corner = exhaustive_square_hit(g, a1, a2)
    data["empty_corner"] = corner
    return AlwaysHitReport(g, a, corner is None, "exhaustive", data)


def rectangle_always_hit(g: int, a1: int, a2: int, b1: int, b2: int) -> bool:
    """Every open b1/2 x b2/2 rectangle meets L_g(a1, a2) (periodic exhaustion)."""
    occ = _accel.lattice_grid(g, a1 % g, a2 % g, g, g)
    return not _accel.empty_windows(occ, g, g, _half_steps(b1), _half_steps(b2), True)
