from fractions import Fraction as Q
from math import lcm

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from recsign.exactnum import HypothesisViolation, Interval
from recsign.kronecker import AngleDescriptor
from recsign.oscillation import (
    CONJECTURED,
    EVENTUALLY_NEGATIVE,
    EVENTUALLY_POSITIVE,
    IDENTICALLY_ZERO,
    INCONCLUSIVE,
    OSCILLATES,
    TOUCHING,
    ClassifyOptions,
    main_sign,
    oscillation_witnesses_case3,
    positive_real_analysis,
    simulate_root_form,
    special_theta_oscillates,
    touching_congruences,
    classify,
)
from recsign.powersum import (
    Recurrence,
    RemainderModel,
    RootFormSpec,
    RootTerm,
    root_form_spectrum,
    signs,
    summarize,
)

R = AngleDescriptor.of_rational
ONE = RootTerm("positive_real", Q(1), coefficient=(Q(1), Q(0)))


def pair(xi, w, phi=0, modulus=1):
    return RootTerm("pair", Q(modulus), R(Q(xi)), w=Q(w), phi_turns=Q(phi))


def sin_sign(x):
    """Exact sign of sin(2 pi x) for rational x."""
    x = Q(x) % 1
    return 0 if x in (0, Q(1, 2)) else (1 if x < Q(1, 2) else -1)


# --- decision tree examples ------------------------------------------------

def test_alternating_oscillates():
    rep = classify(Recurrence.create([-2], [1]))
    assert rep.verdict.kind == OSCILLATES
    assert rep.verdict.witnesses["positive_classes"] == [0]
    assert rep.verdict.witnesses["negative_classes"] == [1]
    assert rep.cross_check["status"] == "agree"


def test_fibonacci_eventually_positive():
    rep = classify(Recurrence.create([1, 1], [0, 1]))
    assert rep.verdict.kind == EVENTUALLY_POSITIVE
    assert rep.cross_check["status"] == "agree"


def test_zero_sequence():
    assert classify(Recurrence.create([1, 1], [0, 0])).verdict.kind == IDENTICALLY_ZERO


def test_example_root_form_lattice_route():
    terms = [RootTerm("positive_real", Q(3), coefficient=(Q(0), Q(0))),
             RootTerm("pair", Q(2), R(Q(7, 10)), (Q(1, 2), Q(0))),
             RootTerm("pair", Q(2), R(Q(1, 5)), (Q(1, 2), Q(0)))]
    rep = classify(RootFormSpec(terms))
    v = rep.verdict
    assert v.kind == OSCILLATES
    assert v.witnesses["lattice"] == "L_5(2,1)"
    assert v.witnesses["period"] == 10
    assert Q(v.witnesses["delta"]) > 0
    spec = rep.spectrum
    for n in v.witnesses["positive_classes"]:
        assert spec.main_part(n, 64).lo > 0
    for n in v.witnesses["negative_classes"]:
        assert spec.main_part(n, 64).hi < 0


def test_positive_dominant_root_wins():
    terms = [RootTerm("positive_real", Q(3), coefficient=(Q(-1, 7), Q(0))),
             RootTerm("pair", Q(2), R(Q(7, 10)), (Q(5), Q(1)))]
    assert classify(RootFormSpec(terms)).verdict.kind == EVENTUALLY_NEGATIVE


def test_pair_and_negative_real_oscillate():
    terms = [RootTerm("negative_real", Q(1), coefficient=(Q(1), Q(0))), pair(Q(1, 3), 2)]
    assert classify(RootFormSpec(terms)).verdict.kind == OSCILLATES


def test_more_than_four_roots_is_conjectured():
    terms = [pair(Q(1, 7), 1), pair(Q(2, 9), 1), RootTerm("negative_real", Q(1), coefficient=(Q(1), Q(0)))]
    assert classify(RootFormSpec(terms)).verdict.kind == CONJECTURED


def test_shared_angle_rejected():
    with pytest.raises(HypothesisViolation):
        classify(RootFormSpec([pair(Q(1, 7), 1), pair(Q(6, 7), 1, Q(1, 5))]))


def test_irrational_w_at_least_one_is_inconclusive():
    approx = AngleDescriptor.of_approximate(Interval(Q(141421, 1000000), Q(141422, 1000000)))
    terms = [ONE, RootTerm("pair", Q(1), approx, w=Q(2), phi_turns=Q(0))]
    v = classify(RootFormSpec(terms)).verdict
    assert v.kind == INCONCLUSIVE and "metric" in v.reason


# --- positive real analysis ------------------------------------------------

def test_touching_quarter_angle():
    spec = root_form_spectrum(RootFormSpec([ONE, pair(Q(1, 4), 1)]))
    a = positive_real_analysis(spec)
    assert a.W_vs_one == 0 and a.S_vs_one == 0
    assert a.period == 4 and a.touching == [3]
    assert a.congruence_data == [[1, 4, 0, 1, 3]]
    assert a.congruence_classes == [3, 4]
    assert classify(RootFormSpec([ONE, pair(Q(1, 4), 1)])).verdict.kind == TOUCHING


def test_small_w_eventually_positive():
    for xi in (Q(1, 3), Q(2, 7), Q(5, 12)):
        spec = root_form_spectrum(RootFormSpec([ONE, pair(xi, Q(1, 2))]))
        assert positive_real_analysis(spec).W_vs_one < 0
        v = classify(RootFormSpec([ONE, pair(xi, Q(1, 2))])).verdict
        assert v.kind == EVENTUALLY_POSITIVE


def test_large_negative_amplitude_oscillates():
    # b(0) = -2 sin(pi/2) + 1 < 0 and b(1) > 0
    spec = RootFormSpec([ONE, pair(Q(1, 3), -2, Q(1, 4))])
    a = positive_real_analysis(root_form_spectrum(spec))
    assert a.S_vs_one == 1 and a.period_signs[0] == -1
    assert classify(spec).verdict.kind == OSCILLATES


def test_touching_resolved_by_remainder_sign():
    # w > 0 with phi = 3/4 turns: zeros at n = 0 mod 4; (-1/2)^(n+1) < 0 there
    rem = RemainderModel.geometric(Q(-1, 2), Q(-1, 2))
    rep = classify(RootFormSpec([ONE, pair(Q(1, 4), 1, Q(3, 4))], rem))
    assert rep.verdict.kind == OSCILLATES
    assert rep.verdict.witnesses["touching_classes"] == [0]
    # phi = 0 puts the zeros at n = 3 mod 4 where the same remainder is positive
    rep = classify(RootFormSpec([ONE, pair(Q(1, 4), 1)], rem))
    assert rep.verdict.kind == EVENTUALLY_POSITIVE


def test_touching_congruences_unsolvable():
    assert touching_congruences([[1, 4, 1, 3, 3]]) is None


# --- special angle pairs and Case3 witnesses -----------------------------------

@pytest.mark.parametrize("name,w,phi", [
    ("pi/4,pi/2", (1, 1), (0, 0)),
    ("pi/3,2pi/3", (1, -1), (0, 0)),
    ("4pi/5,2pi/5", (1, 1), (Q(1, 4), Q(1, 4))),
])
def test_special_theta_examples(name, w, phi):
    n_pos, n_neg = special_theta_oscillates(name, w, phi)
    xi = {"pi/4,pi/2": (Q(1, 8), Q(1, 4)), "pi/3,2pi/3": (Q(1, 6), Q(1, 3)),
          "4pi/5,2pi/5": (Q(2, 5), Q(1, 5))}[name]
    P = lcm(xi[0].denominator, xi[1].denominator)
    assert 0 <= n_pos < P and 0 <= n_neg < P
    spec = root_form_spectrum(RootFormSpec([pair(xi[0], w[0], phi[0]), pair(xi[1], w[1], phi[1])]))
    assert main_sign(spec, n_pos, P) > 0
    assert main_sign(spec, n_neg, P) < 0


def test_special_theta_rejects_other_pairs():
    with pytest.raises(HypothesisViolation):
        special_theta_oscillates((Q(1, 7), Q(2, 7)), (1, 1), (0, 0))


@pytest.mark.parametrize("xi,P", [((Q(7, 10), Q(1, 5)), 10), ((Q(1, 3), Q(1, 7)), 21)])
def test_case3_witness_examples(xi, P):
    w = oscillation_witnesses_case3(*xi)
    assert w.period == P and w.delta > 0
    for n in w.positive_classes:
        assert (sin_sign(n * xi[0]), sin_sign(n * xi[1])) == (1, 1)
    for n in w.negative_classes:
        assert (sin_sign(n * xi[0]), sin_sign(n * xi[1])) == (-1, -1)
    assert w.positive_classes and w.negative_classes


def test_case3_exceptional_square_reported():
    # choose phases so that the (+,+) square is the empty one
    from recsign.unitlattice import empty_square_witness
    c = empty_square_witness(1, 5, 2, 5).center
    phi = (Q(1, 4) - c[0], Q(1, 4) - c[1])
    with pytest.raises(HypothesisViolation, match="exceptional"):
        oscillation_witnesses_case3(Q(1, 5), Q(2, 5), *phi)


def _orbit_patterns(x1, x2):
    P = lcm(x1.denominator, x2.denominator)
    return {(sin_sign(n * x1), sin_sign(n * x2)) for n in range(P)}


def _theorem_pairs(max_den):
    xs = sorted({Q(a, b) for b in range(2, max_den + 1) for a in range(1, b)})
    for x1 in xs:
        for x2 in xs:
            if x1.denominator < x2.denominator or Q(1, 2) in (x1, x2):
                continue
            if x1 == x2 or x1 + x2 == 1:
                continue
            dens = (x1.denominator, x2.denominator)
            if dens in {(5, 5), (6, 3), (8, 4)}:
                continue
            yield x1, x2


def test_sign_pattern_completeness_oracle():
    """All four sign patterns appear in every admissible rational orbit."""
    full = {(s1, s2) for s1 in (1, -1) for s2 in (1, -1)}
    count = 0
    for x1, x2 in _theorem_pairs(12):
        assert full <= _orbit_patterns(x1, x2), (x1, x2)
        count += 1
    assert count == 984


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(list(_theorem_pairs(12))))
def test_case3_witnesses_match_orbit(xs):
    x1, x2 = xs
    w = oscillation_witnesses_case3(x1, x2)
    for n in w.positive_classes:
        assert (sin_sign(n * x1), sin_sign(n * x2)) == (1, 1)
    for n in w.negative_classes:
        assert (sin_sign(n * x1), sin_sign(n * x2)) == (-1, -1)


# --- properties ----------------------------------------------------------------

small_q = st.fractions(-4, 4, max_denominator=3)
recurrences = st.integers(1, 3).flatmap(lambda d: st.tuples(
    st.lists(small_q, min_size=d, max_size=d).filter(lambda c: c[-1] != 0),
    st.lists(small_q, min_size=d, max_size=d)))


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(recurrences)
def test_soundness_against_simulation(ca):
    rec = Recurrence.create(*ca)
    opts = ClassifyOptions(terms=120)
    v = classify(rec, opts).verdict     # a hard contradiction raises CrossCheckError
    sg, _ = signs(rec, 120)
    if v.kind == OSCILLATES:
        assert "+" in sg and "-" in sg
    elif v.kind == EVENTUALLY_POSITIVE:
        assert "-" not in sg[60:]
    elif v.kind == EVENTUALLY_NEGATIVE:
        assert "+" not in sg[60:]


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(recurrences, st.fractions(Q(1, 5), 5, max_denominator=5))
def test_scale_invariance(ca, k):
    c, a = ca
    base = classify(Recurrence.create(c, a), ClassifyOptions(terms=60)).verdict.kind
    up = classify(Recurrence.create(c, [k * x for x in a]), ClassifyOptions(terms=60)).verdict.kind
    down = classify(Recurrence.create(c, [-k * x for x in a]), ClassifyOptions(terms=60)).verdict.kind
    swap = {EVENTUALLY_POSITIVE: EVENTUALLY_NEGATIVE, EVENTUALLY_NEGATIVE: EVENTUALLY_POSITIVE}
    assert up == base
    assert down == swap.get(base, base)


angles = st.fractions(Q(1, 12), Q(11, 12), max_denominator=12).filter(lambda x: x != Q(1, 2))


@settings(max_examples=40, deadline=None)
@given(angles, st.sampled_from([-1, 1]), st.fractions(0, 1, max_denominator=8))
def test_touching_classes_are_exact_zeros(xi, w, phi):
    spec = root_form_spectrum(RootFormSpec([ONE, pair(xi, w, phi)]))
    a = positive_real_analysis(spec)
    assert a.W_vs_one == 0
    for n in a.touching:
        assert main_sign(spec, n, a.period) == 0
        assert spec.main_part(n, 256).width < Q(1, 2 ** 200)
    for n in set(range(a.period)) - set(a.touching):
        assert main_sign(spec, n, a.period) > 0
    # the congruence system predicts exactly the observed zeros
    if a.congruence_classes:
        r, m = a.congruence_classes
        assert a.touching == [n for n in range(a.period) if n % m == r]
    else:
        assert a.touching == []


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(angles, st.fractions(Q(1, 50), 1, max_denominator=50),
                          st.fractions(0, 1, max_denominator=12)), min_size=1, max_size=2,
                unique_by=lambda t: min(t[0], 1 - t[0])),
       st.sampled_from([1, -1]))
def test_w_below_one_is_eventually_positive(data, sign):
    total = sum(w for _, w, _ in data)
    scale = Q(99, 100) / total if total > Q(99, 100) else 1
    terms = [ONE] + [pair(xi, sign * w * scale, phi) for xi, w, phi in data]
    spec = RootFormSpec(terms)
    assert positive_real_analysis(root_form_spectrum(spec)).W_vs_one < 0
    assert classify(spec).verdict.kind == EVENTUALLY_POSITIVE
    assert "-" not in simulate_root_form(spec, 200)


def test_simulation_summary_of_example():
    terms = [pair(Q(7, 10), 1), pair(Q(1, 5), 1)]
    sg = simulate_root_form(RootFormSpec(terms), 100)
    assert summarize(sg).sign_changes >= 10
