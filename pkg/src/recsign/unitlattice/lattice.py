"""The lattice of multiples of (a1, a2) modulo g and its geometry."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from ..exactnum import PI_HI, PI_LO, Interval
from ..exactnum.real import sqrt_interval
from . import _accel

Vec = tuple


@dataclass(frozen=True)
class LgLattice:
    g: int
    a1: int
    a2: int

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("g must be positive")
        if gcd(self.a1, self.g) != 1 or gcd(self.a2, self.g) != 1:
            raise ValueError(f"a1, a2 must be coprime to g (got {self.a1}, {self.a2}, g={self.g})")

    def __contains__(self, u) -> bool:
        return membership(self, u)

    def __str__(self):
        return f"L_{self.g}({self.a1},{self.a2})"


@dataclass(frozen=True)
class LatticeBasis2:
    v1: Vec
    v2: Vec

    @property
    def det(self) -> int:
        return self.v1[0] * self.v2[1] - self.v1[1] * self.v2[0]


def norm2(v: Vec) -> int:
    return v[0] * v[0] + v[1] * v[1]


def membership(L: LgLattice, u: Vec) -> bool:
    """u is in L_g(a1, a2) iff a1*u2 = a2*u1 (mod g)."""
    return (L.a1 * u[1] - L.a2 * u[0]) % L.g == 0


def orbit_residues(L: LgLattice) -> set:
    """{n*(a1, a2) mod g}: the definition of the lattice, restricted to [0, g)^2."""
    return {((n * L.a1) % L.g, (n * L.a2) % L.g) for n in range(L.g)}


def gauss_reduce(v1: Vec, v2: Vec) -> LatticeBasis2:
    """Lagrange-Gauss reduction of a 2-D integer basis."""
    if norm2(v1) > norm2(v2):
        v1, v2 = v2, v1
    while True:
        dot = v1[0] * v2[0] + v1[1] * v2[1]
        n1 = norm2(v1)
        mu = round(Fraction(dot, n1))
        v2 = (v2[0] - mu * v1[0], v2[1] - mu * v1[1])
        if norm2(v2) >= n1:
            return LatticeBasis2(v1, v2)
        v1, v2 = v2, v1


def reduced_basis(L: LgLattice) -> LatticeBasis2:
    """A Gauss-reduced basis; starts from {(1, t), (0, g)} with t = a2/a1 mod g."""
    if L.g == 1:
        return LatticeBasis2((1, 0), (0, 1))
    t = (L.a2 * pow(L.a1, -1, L.g)) % L.g
    return gauss_reduce((1, t), (0, L.g))


@dataclass(frozen=True)
class SuccessiveMinima:
    lambda1_sq: int
    lambda2_sq: int
    w1: Vec
    w2: Vec

    def lambda1(self, bits: int = 64) -> Interval:
        return sqrt_interval(Interval.exact(self.lambda1_sq), bits)

    def lambda2(self, bits: int = 64) -> Interval:
        return sqrt_interval(Interval.exact(self.lambda2_sq), bits)


def _canonical(v: Vec) -> Vec:
    return v if (v[0] > 0 or (v[0] == 0 and v[1] > 0)) else (-v[0], -v[1])


def successive_minima(L: LgLattice) -> SuccessiveMinima:
    """Minima of the unit disk w.r.t. L, by enumerating lattice vectors.

    The search radius is the longer reduced-basis vector, which is at least
    lambda2; witnesses are normalised to point into the right half plane.
    """
    basis = reduced_basis(L)
    bound = max(norm2(basis.v1), norm2(basis.v2))
    pts = _accel.lattice_points_in_disk(L.g, L.a1, L.a2, bound)
    cands = sorted({(n2, _canonical((x, y))) for n2, x, y in pts},
                   key=lambda item: (item[0], -item[1][0], -item[1][1]))
    n1, w1 = cands[0]
    for n2, w in cands[1:]:
        if w1[0] * w[1] - w1[1] * w[0] != 0:
            return SuccessiveMinima(n1, n2, w1, w)
    raise AssertionError("enumeration radius too small")  # pragma: no cover


def minkowski_check(L: LgLattice) -> bool:
    """lambda1 * lambda2 * pi <= 4g, decided on squares with the pi enclosure."""
    m = successive_minima(L)
    prod = m.lambda1_sq * m.lambda2_sq
    rhs = 16 * L.g * L.g
    if prod * PI_HI * PI_HI <= rhs:
        return True
    if prod * PI_LO * PI_LO > rhs:
        return False
    raise ArithmeticError("pi enclosure too coarse for this comparison")


def bender_guarantee(basis: LatticeBasis2, side) -> bool:
    """Sufficient condition for every open axis-parallel square of this side
    to contain a lattice point: area/perimeter = side/4 must exceed
    max(|v1|, |v2| sin angle) / 2 = max(|v1|, |det|/|v1|) / 2.
    """
    half = Fraction(side) / 2
    n1 = norm2(basis.v1)
    det = abs(basis.det)
    return half * half > n1 and half * half * n1 > det * det


def short_vector_bound(r: Vec, det: int) -> Fraction:
    """max(r1, (det + 2 r1 r2) / (r1 + r2)): any larger open square hits a
    lattice of determinant ``det`` that contains the primitive vector r."""
    r1, r2 = r
    if gcd(r1, r2) != 1 or not (0 < r2 <= r1):
        raise ValueError("need gcd(r1, r2) = 1 and 0 < r2 <= r1")
    if det <= 0:
        raise ValueError("determinant must be positive")
    return max(Fraction(r1), Fraction(det + 2 * r1 * r2, r1 + r2))


def minimax_horizontal_gap(r: Vec, det: int, A) -> Fraction:
    """min over centres of the max horizontal chord cut from a side-A square by
    the family of parallel lines (slope r2/r1, vertical spacing det/r1) that
    carries the lattice."""
    r1, r2 = r
    if gcd(r1, r2) != 1 or not (0 < r2 <= r1):
        raise ValueError("need gcd(r1, r2) = 1 and 0 < r2 <= r1")
    A = Fraction(A)
    if A <= 0:
        raise ValueError("A must be positive")
    s = Fraction(r2, r1)
    D = Fraction(det, r1)
    if D <= A * (1 - s):
        return A
    if D <= A * (1 + s):
        return (A * (1 + s) - D) / (2 * s)
    return Fraction(0)


def pair_inequality(r: Vec, g: int) -> bool:
    """4 r1 r2 < g (r1 + r2 - 2): makes the one-short-vector bound beat g/2."""
    r1, r2 = r
    return 4 * r1 * r2 < g * (r1 + r2 - 2)


def lattice_vectors_in_disk(L: LgLattice, radius_sq: int) -> list:
    return [(x, y) for _, x, y in _accel.lattice_points_in_disk(L.g, L.a1, L.a2, radius_sq)]


def crt_solve(residues, moduli) -> Optional[int]:
    """Least u >= 0 with u = r_i (mod m_i) for all i, or None when incompatible.

    Moduli need not be coprime; compatibility is r_i = r_j (mod gcd(m_i, m_j)).
    """
    residues, moduli = list(residues), list(moduli)
    if len(residues) != len(moduli) or not residues:
        raise ValueError("need equally many residues and moduli, at least one")
    u, m = 0, 1
    for r, n in zip(residues, moduli):
        if n <= 0:
            raise ValueError("moduli must be positive")
        g = gcd(m, n)
        if (r - u) % g:
            return None
        step = ((r - u) // g) * pow(m // g, -1, n // g) % (n // g) if n // g > 1 else 0
        u += m * step
        m = m // g * n
        u %= m
    return u
