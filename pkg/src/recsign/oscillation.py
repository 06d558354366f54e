"""The sign classifier: decides whether a recurrence (or a directly given
dominant spectrum) oscillates or is eventually of one sign, names the
argument that certifies the answer, and cross-checks it against exact
simulation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Union

from .exactnum import (
    HypothesisViolation,
    Interval,
    PrecisionExhausted,
    Real,
    modulus_squared,
    power,
    same_number,
)
from .exactnum.real import ladder, pi_interval
from .exactnum.roots import sign_of_real
from .kronecker import (
    DEFAULT_RELATION_BOUND,
    AngleDescriptor,
    classify_pair,
    half_angle_hit,
    hits_square,
)
from .powersum import (
    DominantPair,
    DominantSpectrum,
    Recurrence,
    RootFormSpec,
    dominating_spectrum,
    root_form_spectrum,
    signs,
    subsequence,
    summarize,
    to_power_sum,
)
from .unitlattice import crt_solve

OSCILLATES = "Oscillates"
EVENTUALLY_POSITIVE = "EventuallyPositive"
EVENTUALLY_NEGATIVE = "EventuallyNegative"
IDENTICALLY_ZERO = "IdenticallyZero"
CONJECTURED = "ConjecturedOscillates"
TOUCHING = "TouchingZeros"
INCONCLUSIVE = "Inconclusive"

EXCEPTIONAL_DENOMINATORS = {(5, 5), (6, 3), (8, 4)}
EXCEPTIONAL_PAIRS = {
    "pi/3,2pi/3": (Fraction(1, 6), Fraction(1, 3)),
    "pi/4,pi/2": (Fraction(1, 8), Fraction(1, 4)),
    "4pi/5,2pi/5": (Fraction(2, 5), Fraction(1, 5)),
}


class CrossCheckError(AssertionError):
    """A certified verdict contradicted by exact simulation."""


@dataclass
class Verdict:
    kind: str
    theorem: str = ""
    witnesses: dict = field(default_factory=dict)
    reason: str = ""

    def to_json(self):
        out = {"kind": self.kind}
        if self.theorem:
            out["theorem"] = self.theorem
        if self.witnesses:
            out["witnesses"] = self.witnesses
        if self.reason:
            out["reason"] = self.reason
        return out


def _eventual(sign: int, theorem: str, **wit) -> Verdict:
    return Verdict(EVENTUALLY_POSITIVE if sign > 0 else EVENTUALLY_NEGATIVE, theorem, dict(wit))


@dataclass
class ClassifyOptions:
    terms: int = 200
    relation_bound: int = DEFAULT_RELATION_BOUND
    budget: Optional[int] = None
    cross_check: bool = True


@dataclass
class PositiveRealAnalysis:
    W: Optional[Real]
    W_vs_one: Optional[int]              # sign of W - 1, None when undecided
    S_vs_one: Optional[int]              # sign of S - 1 (rational angles only)
    period: Optional[int] = None
    period_signs: list = field(default_factory=list)
    touching: list = field(default_factory=list)
    congruence_classes: Optional[list] = None
    congruence_data: list = field(default_factory=list)

    def to_json(self):
        out = {}
        if self.W is not None:
            iv = self.W.interval(64)
            out["W"] = str(self.W.exact) if self.W.exact is not None else {"lo": str(iv.lo), "hi": str(iv.hi)}
        for key in ("W_vs_one", "S_vs_one", "period"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        if self.period_signs:
            out["period_signs"] = "".join("+-0"[(1, -1, 0).index(s)] for s in self.period_signs)
        if self.touching:
            out["touching_classes"] = self.touching
        if self.congruence_classes is not None:
            out["congruence_classes"] = self.congruence_classes
        if self.congruence_data:
            out["congruence_data"] = self.congruence_data
        return out


@dataclass
class Report:
    verdict: Verdict
    spectrum: Optional[DominantSpectrum] = None
    details: dict = field(default_factory=dict)
    cross_check: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_json(self):
        out = {"verdict": self.verdict.to_json(), "details": self.details,
               "cross_check": self.cross_check, "notes": self.notes}
        if self.spectrum is not None:
            out["spectrum"] = self.spectrum.to_json()
        return out


# --- exact and interval signs of the dominant part ---------------------------

def _subsequence_sign(spec: DominantSpectrum, r: int, P: int) -> int:
    """Exact sign of the dominant part at n = r (mod P), all angles rational.

    Along n = r + P k every dominating root turns into |alpha|^P, whose
    coefficient in the subsequence is a positive multiple of the dominant
    part at r; it vanishes exactly when that part does.
    """
    rec = spec.source
    target = power(spec.modulus_sq_root, P)
    for t in to_power_sum(subsequence(rec, r, P)).nonzero_terms():
        root = t.root
        if root.is_real and sign_of_real(root) > 0 and same_number(modulus_squared(root), target):
            if t.degree < spec.D:
                return 0
            return sign_of_real(t.coefficient(spec.D))
    return 0


def _exact_sign(spec: DominantSpectrum, n: int, P: Optional[int]) -> Optional[int]:
    ex = spec.exact_main_part(n)
    if ex is not None:
        return ex.real_sign()
    if spec.mode == "recurrence" and P is not None and spec.modulus_sq_root is not None:
        return _subsequence_sign(spec, n % P, P)
    return None


def main_sign(spec: DominantSpectrum, n: int, P: Optional[int] = None,
              budget: Optional[int] = None) -> int:
    """Certified sign of c0 + b(n); exact zeros need exact data."""
    for i, bits in enumerate(ladder(budget)):
        iv = spec.main_part(n, bits)
        s = iv.sign()
        if s is not None and (s != 0 or iv.is_exact):
            return s
        if i == 1:
            ex = _exact_sign(spec, n, P)
            if ex is not None:
                return ex
    raise PrecisionExhausted(f"sign of the dominant part at n={n} undecided")


def _period(terms: list) -> int:
    return lcm(*[p.angle.denominator for p in terms]) if terms else 1


def _delta(spec: DominantSpectrum, ns: list, bits: int = 64) -> Fraction:
    """A rational lower bound for min |dominant part| over ns."""
    lows = []
    for n in ns:
        iv = spec.main_part(n, bits)
        lows.append(max(iv.lo, -iv.hi, Fraction(0)))
    return min(lows) if lows else Fraction(0)


def _period_scan(spec: DominantSpectrum, P: int, budget) -> list:
    return [main_sign(spec, n, P, budget) for n in range(P)]


def _scan_witnesses(spec: DominantSpectrum, P: int, budget) -> dict:
    sg = _period_scan(spec, P, budget)
    pos = [n for n in range(P) if sg[n] > 0]
    neg = [n for n in range(P) if sg[n] < 0]
    return {"period": P, "positive_classes": pos, "negative_classes": neg,
            "zero_classes": [n for n in range(P) if sg[n] == 0],
            "delta": str(min(_delta(spec, pos), _delta(spec, neg))) if pos and neg else None}


def _numeric_evidence(spec: DominantSpectrum, N: int, bits: int = 96) -> dict:
    """Non-certified scan for indices where the dominant part has each sign."""
    first_pos = first_neg = None
    for n in range(N + 1):
        s = spec.main_part(n, bits).sign()
        if s and s > 0 and first_pos is None:
            first_pos = n
        if s and s < 0 and first_neg is None:
            first_neg = n
        if first_pos is not None and first_neg is not None:
            break
    return {"first_positive": first_pos, "first_negative": first_neg, "scanned": N, "certified": False}


# --- the building blocks -----------------------------------------------------

def _real_turns(phi) -> Real:
    if isinstance(phi, Real):
        return phi
    return Real.rational(phi)


def phase_turns_from_radians(phi) -> Real:
    """phi / 2pi for a rational phase in radians."""
    phi = Fraction(phi)
    if phi == 0:
        return Real.rational(0)
    return Real(lambda bits: (Interval.exact(phi) / (2 * pi_interval(bits + 8))).rounded(bits + 4),
                label=f"{phi}/2pi")


def _sign_centre(phi_turns: Real, s: int) -> Real:
    """Centre making sin(2 pi (x + phi)) have sign s on the quarter-square."""
    return (Fraction(1, 4) if s > 0 else Fraction(3, 4)) - phi_turns


def special_theta_oscillates(xi, w, phi_turns, budget: Optional[int] = None) -> tuple:
    """(n_pos, n_neg) in one period for b(n) = sum w_k sin(2 pi (n xi_k + phi_k))
    when the denominators of (xi1, xi2) are an exceptional pair.

    ``xi`` is a pair of rationals or one of the names in EXCEPTIONAL_PAIRS.
    """
    if isinstance(xi, str):
        xi = EXCEPTIONAL_PAIRS[xi]
    x1, x2 = Fraction(xi[0]) % 1, Fraction(xi[1]) % 1
    dens = tuple(sorted((x1.denominator, x2.denominator), reverse=True))
    if dens not in EXCEPTIONAL_DENOMINATORS:
        raise HypothesisViolation(f"denominators {dens} are not an exceptional pair")
    w1, w2 = (x if isinstance(x, Real) else Real.rational(x) for x in w)
    if w1.sign(budget) == 0 or w2.sign(budget) == 0:
        raise HypothesisViolation("amplitudes must be nonzero")
    spec = DominantSpectrum("root_form", Real.rational(1), 0)
    spec.pairs = [DominantPair(AngleDescriptor.of_rational(x1), w1, _real_turns(phi_turns[0])),
                  DominantPair(AngleDescriptor.of_rational(x2), w2, _real_turns(phi_turns[1]))]
    P = lcm(x1.denominator, x2.denominator)
    pending = list(range(P))
    n_pos = n_neg = None
    for bits in ladder(budget):
        still = []
        for n in pending:
            s = spec.main_part(n, bits).sign()
            if s is None:
                still.append(n)
            elif s > 0 and n_pos is None:
                n_pos = n
            elif s < 0 and n_neg is None:
                n_neg = n
        if n_pos is not None and n_neg is not None:
            return n_pos, n_neg
        pending = still
        if not pending:
            break
    # only exact zeros left undecided: settle them exactly when possible
    for n in pending:
        s = main_sign(spec, n, P, budget)
        if s > 0 and n_pos is None:
            n_pos = n
        if s < 0 and n_neg is None:
            n_neg = n
    if n_pos is None or n_neg is None:
        raise PrecisionExhausted("exceptional-pair scan did not find both signs")
    return n_pos, n_neg


@dataclass
class Case3Witnesses:
    positive_classes: list
    negative_classes: list
    period: int
    delta: Fraction

    def to_json(self):
        return {"positive_classes": self.positive_classes, "negative_classes": self.negative_classes,
                "period": self.period, "delta": str(self.delta)}


def _pattern_classes(x1: AngleDescriptor, x2: AngleDescriptor, phi1: Real, phi2: Real,
                     pattern: tuple, rel, budget) -> list:
    c = (_sign_centre(phi1, pattern[0]), _sign_centre(phi2, pattern[1]))
    hv = hits_square(x1, x2, c, rel, budget)
    if hv.outcome != "InfinitelyManyHits":
        raise HypothesisViolation(
            f"no orbit point in the square for sign pattern {pattern}; the exceptional-pair route is required")
    return hv.witnesses


def oscillation_witnesses_case3(xi1, xi2, phi1=0, phi2=0, budget: Optional[int] = None) -> Case3Witnesses:
    """Residue classes where (sin(2 pi (n xi1 + phi1)), sin(2 pi (n xi2 + phi2)))
    has sign pattern (+,+) and (-,-), with a margin delta below both sines."""
    x1, x2 = (x if isinstance(x, AngleDescriptor) else AngleDescriptor.of_rational(x) for x in (xi1, xi2))
    p1, p2 = _real_turns(phi1), _real_turns(phi2)
    rel = classify_pair(x1, x2)
    if rel.case != "Case3":
        raise HypothesisViolation("both angles must be rational")
    pos = _pattern_classes(x1, x2, p1, p2, (1, 1), rel, budget)
    neg = _pattern_classes(x1, x2, p1, p2, (-1, -1), rel, budget)
    P = lcm(x1.denominator, x2.denominator)
    one = Real.rational(1)
    lows = []
    for n in pos + neg:
        for x, p in ((x1, p1), (x2, p2)):
            v = DominantPair(x, one, p).value(n, 64)
            lows.append(max(v.lo, -v.hi))
    return Case3Witnesses(pos, neg, P, min(lows))


def touching_congruences(data: list) -> Optional[list]:
    """Solve 4 d a n = b (A d - 4c) (mod 4 d b) for all k at once.

    ``data`` holds (a, b, c, d, A) per term: xi = a/b, phi/2pi = c/d, A = 1
    for a negative amplitude and 3 for a positive one. Returns [residue,
    modulus] or None when some congruence or their combination is unsolvable.
    """
    residues, moduli = [], []
    for a, b, c, d, A in data:
        rhs = b * (A * d - 4 * c)
        if rhs % (4 * d):
            return None
        moduli.append(b)
        residues.append((rhs // (4 * d)) * pow(a, -1, b) % b if b > 1 else 0)
    r = crt_solve(residues, moduli)
    return None if r is None else [r, lcm(*moduli)]


def positive_real_analysis(spec: DominantSpectrum, budget: Optional[int] = None) -> PositiveRealAnalysis:
    """W and the periodic minimum of the normalised dominant part against 1."""
    pr = spec.positive_real
    if pr is None or pr.sign == 0:
        raise HypothesisViolation("needs a dominating positive real root with nonzero coefficient")
    terms = spec.oscillating_terms()
    c0 = pr.value
    W = Real.rational(0)
    for p in terms:
        W = W + Real(lambda bits, p=p: p.w.interval(bits).abs(), exact=abs(p.w.exact) if p.w.exact is not None else None)
    W = W / Real(lambda bits: c0.interval(bits).abs(), exact=abs(pr.exact) if pr.exact is not None else None)
    try:
        w_cmp = W.compare(1, budget=min(budget or 512, 512))
    except PrecisionExhausted:
        w_cmp = None
    out = PositiveRealAnalysis(W, w_cmp, None)
    if w_cmp is not None and w_cmp < 0:
        return out
    if not all(p.angle.is_rational for p in terms):
        return out
    P = _period(terms)
    out.period = P
    sg = _period_scan(spec, P, budget)
    out.period_signs = sg
    if any(s == -pr.sign for s in sg):
        out.S_vs_one = 1
    elif any(s == 0 for s in sg):
        out.S_vs_one = 0
        out.touching = [n for n in range(P) if sg[n] == 0]
    else:
        out.S_vs_one = -1
    if w_cmp == 0 and all(p.phi_turns.exact is not None and p.w.exact is not None for p in terms) \
            and pr.exact is not None:
        data = []
        for p in terms:
            phi = p.phi_turns.exact % 1
            A = 1 if p.w.exact / pr.exact < 0 else 3
            data.append((p.angle.rational.numerator, p.angle.rational.denominator,
                         phi.numerator, phi.denominator, A))
        out.congruence_data = [list(d) for d in data]
        out.congruence_classes = touching_congruences(data) or []
    return out


# --- the decision tree -------------------------------------------------------

def _spectrum_of(item, budget) -> DominantSpectrum:
    if isinstance(item, DominantSpectrum):
        return item
    if isinstance(item, Recurrence):
        return dominating_spectrum(to_power_sum(item), budget)
    if isinstance(item, RootFormSpec):
        return root_form_spectrum(item)
    raise TypeError(f"cannot classify {type(item).__name__}")


def _check_pair_angles(pairs: list):
    rats = [p.angle.rational for p in pairs if p.angle.is_rational]
    for i, a in enumerate(rats):
        for b in rats[i + 1:]:
            if a == b or (a + b) % 1 == 0:
                raise HypothesisViolation(f"two dominating pairs share the angle +-{a}")


def _single_pair(spec, budget, opts) -> Verdict:
    p = spec.oscillating_terms()[0]
    if p.angle.is_rational:
        wit = _scan_witnesses(spec, p.angle.denominator, budget)
        return Verdict(OSCILLATES, "single conjugate pair: orbit spacing below one half", wit)
    return Verdict(OSCILLATES, "single conjugate pair: density of n xi mod 1",
                   {"epsilon": "1/8", "evidence": _numeric_evidence(spec, opts.terms)})


def _pair_and_negative(spec, budget, opts) -> Verdict:
    pair = spec.pairs[0]
    s = pair.w.sign(budget)
    c2, eps, hv = half_angle_hit(pair.angle, _sign_centre(pair.phi_turns, s), budget)
    wit = {"half_angle_hit": hv.to_json(), "c2": str(c2), "epsilon": str(eps)}
    theorem = "pair and negative real root: n(xi, 1/2) mod 1"
    if pair.angle.is_rational:
        wit.update(_scan_witnesses(spec, lcm(pair.angle.denominator, 2), budget))
    else:
        wit["evidence"] = _numeric_evidence(spec, opts.terms)
    return Verdict(OSCILLATES, theorem, wit)


def _two_pairs(spec, budget, opts, details) -> Verdict:
    p1, p2 = spec.pairs
    rel = classify_pair(p1.angle, p2.angle, opts.relation_bound)
    details["relation"] = rel.to_json()
    if rel.case == "Case3":
        x1, x2 = p1.angle.rational, p2.angle.rational
        dens = tuple(sorted((x1.denominator, x2.denominator), reverse=True))
        P = lcm(x1.denominator, x2.denominator)
        if dens in EXCEPTIONAL_DENOMINATORS:
            n_pos, n_neg = special_theta_oscillates((x1, x2), (p1.w, p2.w), (p1.phi_turns, p2.phi_turns), budget)
            wit = _scan_witnesses(spec, P, budget)
            wit["special_scan"] = [n_pos, n_neg]
            return Verdict(OSCILLATES, "two pairs: exceptional denominators, direct periodic argument", wit)
        s1, s2 = p1.w.sign(budget), p2.w.sign(budget)
        pos = _pattern_classes(p1.angle, p2.angle, p1.phi_turns, p2.phi_turns, (s1, s2), rel, budget)
        neg = _pattern_classes(p1.angle, p2.angle, p1.phi_turns, p2.phi_turns, (-s1, -s2), rel, budget)
        wit = {"period": P, "positive_classes": pos, "negative_classes": neg,
               "delta": str(min(_delta(spec, pos), _delta(spec, neg)))}
        g = gcd(x1.denominator, x2.denominator)
        wit["lattice"] = f"L_{g}({x1.numerator % g},{x2.numerator % g})"
        return Verdict(OSCILLATES, "two pairs: lattice points in squares", wit)
    s1, s2 = p1.w.sign(budget), p2.w.sign(budget)
    hits = []
    for pat in ((s1, s2), (-s1, -s2)):
        c = (_sign_centre(p1.phi_turns, pat[0]), _sign_centre(p2.phi_turns, pat[1]))
        hv = hits_square(p1.angle, p2.angle, c, rel, budget)
        if hv.outcome != "InfinitelyManyHits":
            return Verdict(INCONCLUSIVE, reason=f"square hit undecided for pattern {pat}: {hv.outcome}")
        hits.append(hv.to_json())
    theorem = ("two pairs: density in the unit square" if rel.case == "Case1"
               else "two pairs: density on the relation lines")
    return Verdict(OSCILLATES, theorem, {"hits": hits, "evidence": _numeric_evidence(spec, opts.terms)})


def _resolve_touching(spec, analysis: PositiveRealAnalysis, opts, depth: int) -> Verdict:
    P, s0 = analysis.period, spec.positive_real.sign
    classes = analysis.touching
    wit = {"period": P, "touching_classes": classes}
    if spec.mode == "recurrence" and not spec.lower_degree_folded:
        class_signs = {}
        sub_opts = ClassifyOptions(opts.terms, opts.relation_bound, opts.budget, cross_check=False)
        for r in classes:
            sub = subsequence(spec.source, r, P)
            v = _classify(sub, sub_opts, depth + 1).verdict
            if v.kind == OSCILLATES:
                wit["oscillating_class"] = r
                return Verdict(OSCILLATES, "touching zeros: subsequence oscillates", wit)
            if v.kind in (EVENTUALLY_POSITIVE, EVENTUALLY_NEGATIVE, IDENTICALLY_ZERO):
                class_signs[r] = {EVENTUALLY_POSITIVE: 1, EVENTUALLY_NEGATIVE: -1, IDENTICALLY_ZERO: 0}[v.kind]
            else:
                return Verdict(TOUCHING, "touching zeros", wit, reason=f"class {r}: {v.kind}")
        return _combine_classes(s0, class_signs, wit)
    rem = spec.remainder
    lower = isinstance(spec.source, RootFormSpec) and any(
        t.modulus < spec.source.top_modulus and not t.is_zero for t in spec.source.terms)
    if rem.kind == "sequence" and not lower and getattr(rem, "values", None) is not None:
        class_signs = {}
        for r in classes:
            s_even = _sign(rem.values(r + 2 * P * 50))
            s_odd = _sign(rem.values(r + P + 2 * P * 50))
            if s_even != s_odd and P % 2:
                wit["oscillating_class"] = r
                return Verdict(OSCILLATES, "touching zeros: remainder alternates on a class", wit)
            class_signs[r] = s_even
        return _combine_classes(s0, class_signs, wit, "touching zeros: remainder sign on touching classes")
    return Verdict(TOUCHING, "touching zeros", wit,
                   reason="the sign at touching indices is decided by the remainder, which is not known exactly")


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _combine_classes(s0: int, class_signs: dict, wit: dict,
                     theorem: str = "touching zeros: subsequence analysis") -> Verdict:
    wit["class_signs"] = {str(k): v for k, v in class_signs.items()}
    if any(s == -s0 for s in class_signs.values()):
        wit["negative_classes" if s0 > 0 else "positive_classes"] = [r for r, s in class_signs.items() if s == -s0]
        return Verdict(OSCILLATES, theorem, wit)
    if any(s == 0 for s in class_signs.values()):
        wit["eventually_zero_classes"] = [r for r, s in class_signs.items() if s == 0]
    return _eventual(s0, theorem, **wit)


def _positive_real_branch(spec, budget, opts, details, depth) -> Verdict:
    analysis = positive_real_analysis(spec, budget)
    details["positive_real_analysis"] = analysis.to_json()
    s0 = spec.positive_real.sign
    if analysis.W_vs_one is not None and analysis.W_vs_one < 0:
        return _eventual(s0, "amplitude budget W below one")
    if analysis.S_vs_one is None:
        if analysis.W_vs_one is None:
            return Verdict(INCONCLUSIVE, reason="W against 1 undecided and some angle irrational")
        return Verdict(INCONCLUSIVE, reason="metric regime: W >= 1 with an irrational angle; "
                                            "only almost-all statements are available")
    P = analysis.period
    sg = analysis.period_signs
    if analysis.S_vs_one > 0:
        wit = {"period": P, "positive_classes": [n for n in range(P) if sg[n] > 0],
               "negative_classes": [n for n in range(P) if sg[n] < 0]}
        return Verdict(OSCILLATES, "periodic minimum exceeds the positive real coefficient", wit)
    if analysis.S_vs_one < 0:
        return _eventual(s0, "periodic minimum stays above zero", period=P)
    if analysis.congruence_classes is not None:
        details["touching_congruence_agrees"] = _congruence_agrees(analysis)
    return _resolve_touching(spec, analysis, opts, depth)


def _congruence_agrees(a: PositiveRealAnalysis) -> bool:
    if not a.congruence_classes:
        return not a.touching
    r, m = a.congruence_classes
    return sorted(a.touching) == [n for n in range(a.period) if n % m == r]


def _classify(item, opts: ClassifyOptions, depth: int = 0) -> Report:
    if depth > 8:
        return Report(Verdict(INCONCLUSIVE, reason="subsequence recursion too deep"))
    budget = opts.budget
    spec = _spectrum_of(item, budget)
    details: dict = {}
    report = Report(Verdict(INCONCLUSIVE), spec, details)
    if spec.is_zero:
        report.verdict = Verdict(IDENTICALLY_ZERO, "all power-sum coefficients vanish")
        if isinstance(spec.source, Recurrence) and any(spec.source.prefix):
            report.notes.append(f"zero from index {spec.source.offset} on")
        return report
    if spec.lower_degree_folded:
        report.notes.append("lower-degree terms of the same modulus are treated as an O(1/n) remainder")
    terms = spec.oscillating_terms()
    _check_pair_angles(spec.pairs)
    m = spec.root_count
    if spec.positive_real is not None:
        if m == 1:
            report.verdict = _eventual(spec.positive_real.sign, "unique dominating root is positive real")
        else:
            report.verdict = _positive_real_branch(spec, budget, opts, details, depth)
    elif m == 1:
        report.verdict = Verdict(OSCILLATES, "single negative real root: alternating signs",
                                 {"period": 2, "positive_classes": [0 if spec.negative_real.sign > 0 else 1],
                                  "negative_classes": [1 if spec.negative_real.sign > 0 else 0]})
    elif m == 2:
        report.verdict = _single_pair(spec, budget, opts)
    elif m == 3:
        report.verdict = _pair_and_negative(spec, budget, opts)
    elif m == 4 and len(spec.pairs) == 2:
        report.verdict = _two_pairs(spec, budget, opts, details)
    else:
        ev = {"dominating_roots": m}
        if all(p.angle.is_rational for p in terms):
            ev.update(_scan_witnesses(spec, _period(terms), budget))
        else:
            ev["evidence"] = _numeric_evidence(spec, opts.terms)
        report.verdict = Verdict(CONJECTURED, "more than four dominating roots, none positive real", ev)
    if any(p.angle.kind == "approximate" for p in terms):
        report.notes.append("approximate angles: verdict assumes the given enclosures describe irrational angles")
    if opts.cross_check:
        report.cross_check = cross_check(item, spec, report.verdict, opts)
    return report


def classify(item: Union[Recurrence, RootFormSpec, DominantSpectrum],
             options: Optional[ClassifyOptions] = None) -> Report:
    """Classify the eventual sign behaviour; see the module docstring."""
    return _classify(item, options or ClassifyOptions())


# --- simulation and cross-check ----------------------------------------------

def simulate_root_form(spec: RootFormSpec, N: int, bits: int = 96) -> list:
    """Signs of a(0..N) for a root-form input: '+', '-', '0' or '?'."""
    dom = root_form_spectrum(spec)
    has_lower = any(t.modulus < (spec.top_modulus or 0) and not t.is_zero for t in spec.terms)
    out = []
    for n in range(N + 1):
        iv = spec.normalised_value(n, bits)
        s = iv.sign()
        if s is not None and (s != 0 or iv.is_exact):
            out.append("+-0"[(1, -1, 0).index(s)])
            continue
        ex = dom.exact_main_part(n) if not has_lower and not dom.is_zero else None
        if ex is not None and ex.is_zero():
            r = spec.remainder.values(n) if spec.remainder is not None and spec.remainder.values else 0
            out.append("+-0"[(1, -1, 0).index(_sign(r))])
        else:
            out.append("?")
    return out


def _tail(signs_: list) -> list:
    return signs_[len(signs_) // 2:]


def cross_check(item, spec: DominantSpectrum, verdict: Verdict, opts: ClassifyOptions) -> dict:
    """Compare a verdict with simulated signs.

    Disagreement means: an eventual-sign verdict while the opposite sign
    appears in the second half of the simulated range at N and again at 4N,
    or an oscillation verdict with explicit classes while the second half
    keeps one strict sign at N and at 4N. Anything else is reported as
    confirmed or unconfirmed, never as an error.
    """
    N = opts.terms
    if isinstance(item, Recurrence):
        sim = lambda k: signs(item, k)[0]
        source = "exact"
    elif isinstance(item, RootFormSpec):
        if item.remainder is not None and item.remainder.values is None:
            sim = lambda k: simulate_root_form(RootFormSpec(item.terms, None), k)
            source = "interval, dominant terms only"
        else:
            sim = lambda k: simulate_root_form(item, k)
            source = "interval"
    else:
        return {"status": "skipped", "reason": "no sequence to simulate"}

    def verdict_holds(sg: list) -> Optional[bool]:
        tail = _tail(sg)
        if verdict.kind == EVENTUALLY_POSITIVE:
            return "-" not in tail
        if verdict.kind == EVENTUALLY_NEGATIVE:
            return "+" not in tail
        if verdict.kind == OSCILLATES:
            if "+" in tail and "-" in tail:
                return True
            if "negative_classes" in verdict.witnesses and "?" not in tail:
                return False
            return None
        if verdict.kind == IDENTICALLY_ZERO:
            return set(tail) <= {"0"} if source == "exact" else None
        return None

    sg = sim(N)
    ok = verdict_holds(sg)
    out = {"terms": N, "source": source, "summary": summarize(sg).to_json()}
    if ok is None:
        out["status"] = "unconfirmed"
        return out
    if ok:
        out["status"] = "agree"
        return out
    ok4 = verdict_holds(sim(4 * N))
    if ok4 is False:
        raise CrossCheckError(f"verdict {verdict.kind} contradicted by simulation up to {4 * N}")
    out["status"] = "agree at 4N"
    return out
