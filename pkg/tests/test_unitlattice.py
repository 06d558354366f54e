from fractions import Fraction as Q
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from recsign.exactnum import HypothesisViolation
from recsign.unitlattice import (
    LatticeBasis2,
    LgLattice,
    apply_s,
    apply_tau,
    bender_guarantee,
    crt_solve,
    empty_square_witness,
    exhaustive_square_hit,
    hitting_indices,
    is_square_empty,
    membership,
    minimax_horizontal_gap,
    minkowski_check,
    multiples_from_lattice,
    multiples_mod1,
    orbit_residues,
    pair_inequality,
    rectangle_always_hit,
    reduced_basis,
    short_vector_bound,
    square_always_hit,
    successive_minima,
)

from oracles import (
    admissible,
    brute_empty_square,
    lattice_always_hit,
    lattice_points,
    orbit,
    shortest_norms,
)

EXCEPTIONAL = {(5, 5), (6, 3), (8, 4)}
L52 = LgLattice(5, 2, 1)


def admissible_pairs(g):
    return [(a1, a2) for a1 in range(1, g) for a2 in range(1, g)
            if gcd(a1, g) == 1 and gcd(a2, g) == 1 and (a1 - a2) % g and (a1 + a2) % g]


@pytest.mark.parametrize("u, expected", [((2, 1), True), ((1, 3), True), ((1, 1), False)])
def test_membership_examples(u, expected):
    assert membership(L52, u) is expected


def test_reduced_basis_l5():
    b = reduced_basis(L52)
    assert abs(b.det) == 5
    assert {tuple(sorted(map(abs, v))) for v in (b.v1, b.v2)} == {(1, 2)}


def test_reduced_basis_l7_and_unit():
    b = reduced_basis(LgLattice(7, 1, 3))
    assert abs(b.det) == 7
    assert min(b.v1[0] ** 2 + b.v1[1] ** 2, b.v2[0] ** 2 + b.v2[1] ** 2) == shortest_norms(7, 1, 3)[0]
    assert abs(reduced_basis(LgLattice(1, 0, 0)).det) == 1


def test_successive_minima_examples():
    m = successive_minima(L52)
    assert (m.lambda1_sq, m.lambda2_sq) == (5, 5)
    assert membership(L52, m.w1) and membership(L52, m.w2)
    z = successive_minima(LgLattice(1, 0, 0))
    assert (z.lambda1_sq, z.lambda2_sq) == (1, 1)
    m9 = successive_minima(LgLattice(9, 2, 1))
    assert m9.lambda1_sq == 5
    assert (m9.lambda1_sq, m9.lambda2_sq) == shortest_norms(9, 2, 1)


def test_minima_match_enumeration():
    for g in range(2, 25):
        for a1, a2 in [(a1, a2) for a1 in range(1, g) for a2 in range(1, g)
                       if gcd(a1, g) == 1 and gcd(a2, g) == 1][:12]:
            m = successive_minima(LgLattice(g, a1, a2))
            assert (m.lambda1_sq, m.lambda2_sq) == shortest_norms(g, a1, a2), (g, a1, a2)


def test_minkowski_examples():
    assert minkowski_check(L52)
    assert minkowski_check(LgLattice(1, 0, 0))


@pytest.mark.parametrize("residues, moduli, expected", [
    ((1, 3), (6, 4), 7),
    ((0, 1), (2, 4), None),
    ((5,), (7,), 5),
])
def test_crt_examples(residues, moduli, expected):
    assert crt_solve(residues, moduli) == expected


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 40), st.integers(1, 12)), min_size=1, max_size=3))
def test_crt_matches_enumeration(system):
    residues = [r for r, _ in system]
    moduli = [m for _, m in system]
    period = 1
    for m in moduli:
        period = period * m // gcd(period, m)
    brute = next((u for u in range(period) if all((u - r) % m == 0 for r, m in system)), None)
    assert crt_solve(residues, moduli) == brute


def test_bender_examples():
    z = LatticeBasis2((1, 0), (0, 1))
    assert bender_guarantee(z, 5)
    assert not bender_guarantee(z, 1)


@pytest.mark.parametrize("r, det, expected", [
    ((2, 1), 10, Q(14, 3)),
    ((1, 1), 2, Q(2)),
    ((4, 3), 10, Q(34, 7)),
])
def test_short_vector_bound_examples(r, det, expected):
    assert short_vector_bound(r, det) == expected


def test_pair_inequality_example():
    assert pair_inequality((4, 3), 10)   # 48 < 50


def test_minimax_examples():
    assert minimax_horizontal_gap((2, 1), 1, 1) == 1
    assert minimax_horizontal_gap((3, 1), 30, 2) == 0
    with pytest.raises(ValueError):
        minimax_horizontal_gap((2, 2), 4, 1)


@pytest.mark.parametrize("args, size", [((1, 5, 1, 2), 10), ((7, 10, 1, 5), 10), ((0, 1, 0, 1), 1)])
def test_multiples_sizes(args, size):
    ps = multiples_mod1(*args)
    assert len(ps) == size
    assert set(ps.as_fractions()) == orbit(*args)


def test_multiples_from_lattice_matches_orbit():
    for b1 in range(2, 13):
        for b2 in range(2, b1 + 1):
            for a1 in range(1, b1):
                for a2 in range(1, b2):
                    if gcd(a1, b1) == 1 and gcd(a2, b2) == 1:
                        assert multiples_mod1(a1, b1, a2, b2) == multiples_from_lattice(a1, b1, a2, b2)


def test_symmetries():
    assert apply_s(multiples_mod1(1, 5, 2, 5)) == multiples_mod1(4, 5, 2, 5)
    ps = multiples_mod1(3, 8, 1, 4)
    assert apply_tau(apply_tau(ps)) == ps
    assert apply_s(apply_s(ps)) == ps


def test_empty_square_examples():
    w = empty_square_witness(1, 5, 1, 2)
    assert w is not None and w.center[1] == Q(1, 4)
    assert is_square_empty(1, 6, 2, 3, (Q(1, 12), Q(1, 3)))
    assert empty_square_witness(2, 7, 1, 7) is None
    assert empty_square_witness(1, 5, 2, 5) is not None


def test_empty_square_rejects_bad_input():
    with pytest.raises(HypothesisViolation):
        empty_square_witness(1, 4, 1, 4)
    with pytest.raises(HypothesisViolation):
        empty_square_witness(1, 3, 1, 5)


def test_empty_square_matches_brute_force():
    for b1 in range(2, 13):
        for b2 in range(2, b1 + 1):
            for a1 in range(1, b1):
                for a2 in range(1, b2):
                    if not admissible(a1, b1, a2, b2):
                        continue
                    w = empty_square_witness(a1, b1, a2, b2)
                    brute = brute_empty_square(a1, b1, a2, b2)
                    assert (w is None) == (brute is None), (a1, b1, a2, b2)
                    if w is not None:
                        assert is_square_empty(a1, b1, a2, b2, w.center)
                    expected = (b1, b2) in EXCEPTIONAL or b2 == 2
                    assert (w is not None) == expected


def test_hitting_indices_brute_force():
    c = (Q(1, 4), Q(1, 4))
    hits = hitting_indices(7, 10, 1, 5, c)
    for n in range(10):
        p = (Q(7 * n, 10) % 1, Q(n, 5) % 1)
        inside = all(abs((x - y + Q(1, 2)) % 1 - Q(1, 2)) < Q(1, 4) for x, y in zip(p, c))
        assert (n in hits) == inside


def test_square_always_hit_examples():
    rep = square_always_hit(7, 1, 3)
    assert rep.certified and rep.branch == "small-g table"
    bad = square_always_hit(5, 2, 1)
    assert not bad.certified
    rep11 = square_always_hit(11, 2, 1)
    assert rep11.certified and rep11.branch in ("bender", "short-vector")
    assert exhaustive_square_hit(11, 2, 1) is None
    assert lattice_always_hit(11, 2, 1, Q(11, 2))


def test_square_always_hit_agrees_with_oracle():
    for g in range(7, 19):
        for a1, a2 in admissible_pairs(g):
            rep = square_always_hit(g, a1, a2)
            assert rep.certified, (g, a1, a2, rep.branch)
            assert lattice_always_hit(g, a1, a2, Q(g, 2))


def test_lattice_group_structure():
    for g in range(2, 13):
        for a1, a2 in [(a1, a2) for a1 in range(1, g) for a2 in range(1, g)
                       if gcd(a1, g) == 1 and gcd(a2, g) == 1]:
            L = LgLattice(g, a1, a2)
            pts = [p for p in lattice_points(g, a1, a2, 2 * g)]
            assert membership(L, (g, 0)) and membership(L, (0, g)) and membership(L, (a1, a2))
            for p in pts[::7]:
                for q in pts[::11]:
                    assert membership(L, (p[0] + q[0], p[1] + q[1]))
                assert membership(L, (-p[0], -p[1]))
                assert membership(L, (p[0] + 3 * g, p[1] - 2 * g))
            inbox = {(x, y) for x in range(g) for y in range(g) if membership(L, (x, y))}
            assert inbox == orbit_residues(L) == {(n * a1 % g, n * a2 % g) for n in range(g)}


def test_reduced_basis_spans():
    for g in range(2, 16):
        for a1, a2 in [(1, t) for t in range(1, g) if gcd(t, g) == 1]:
            L = LgLattice(g, a1, a2)
            b = reduced_basis(L)
            det = b.det
            for x, y in lattice_points(g, a1, a2, 3 * g):
                if x * x + y * y > 9 * g * g:
                    continue
                # Cramer: integer coordinates in the basis
                c1 = x * b.v2[1] - y * b.v2[0]
                c2 = b.v1[0] * y - b.v1[1] * x
                assert c1 % det == 0 and c2 % det == 0


def test_rectangle_props():
    for g in range(5, 13):
        for a1 in range(1, 2 * g):
            for a2 in range(1, g):
                if admissible(a1, 2 * g, a2, g):
                    assert rectangle_always_hit(g, a1, a2, 2 * g, g)
                    assert brute_empty_square(a1, 2 * g, a2, g) is None
    for g in range(3, 9):
        b1 = 3 * g
        for a1 in range(1, b1):
            for a2 in range(1, g):
                if admissible(a1, b1, a2, g):
                    assert rectangle_always_hit(g, a1, a2, b1, g)


def test_bender_no_false_positives():
    for g in range(3, 31):
        for a1, a2 in admissible_pairs(g)[:10]:
            b = reduced_basis(LgLattice(g, a1, a2))
            if bender_guarantee(b, Q(g, 2)):
                assert lattice_always_hit(g, a1, a2, Q(g, 2))


@pytest.mark.slow
def test_short_vector_bound_no_false_positives():
    # every lattice L_g(1, t) containing a primitive r, side just above the bound
    for g in range(2, 51):
        for t in range(1, g):
            if gcd(t, g) != 1:
                continue
            m = successive_minima(LgLattice(g, 1, t))
            r = tuple(sorted((abs(m.w1[0]), abs(m.w1[1])), reverse=True))
            if r[1] == 0 or gcd(*r) != 1:
                continue
            bound = short_vector_bound(r, g)
            side = int(bound) + 1
            if side <= g:
                assert lattice_always_hit(g, 1, t, side), (g, t, r, bound)
