"""Command-line front end.

Exact inputs are JSON documents whose rationals are strings "p/q" (reduced,
positive denominator) or plain integers; binary floats are rejected. Reports
go to stdout as sorted JSON; timing goes to stderr so the report body is
byte-for-byte reproducible.

Exit codes: 0 for any verdict, 2 for input or hypothesis errors, 3 when the
precision budget runs out.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional

from .exactnum import (
    ComplexBox,
    HypothesisViolation,
    Interval,
    PrecisionExhausted,
    RatPoly,
    modulus_squared,
    precision_budget,
)
from .exactnum.roots import AlgebraicRoot, distinct_roots
from .kronecker import AngleDescriptor, angle_of_unit
from .oscillation import ClassifyOptions, classify, simulate_root_form
from .powersum import Recurrence, RemainderModel, RootFormSpec, RootTerm, signs
from .unitlattice import (
    LgLattice,
    empty_square_witness,
    membership,
    multiples_mod1,
    reduced_basis,
    square_always_hit,
    successive_minima,
)

EXIT_OK, EXIT_INPUT, EXIT_PRECISION = 0, 2, 3

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")
_DECIMAL = re.compile(r"^-?(\d+(\.\d*)?|\.\d+)([eE][-+]?\d+)?$")


class InputError(ValueError):
    """Malformed input, annotated with where in the document it occurred."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


def parse_rational(value, where: str = "") -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(where, "rationals must be strings 'p/q' or integers, not floats")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str) or not _RATIONAL.match(value.strip()):
        raise InputError(where, f"not a rational 'p/q': {value!r}")
    text = value.strip()
    if "/" in text:
        p, q = (int(x) for x in text.split("/"))
        if q == 0:
            raise InputError(where, "zero denominator")
        if gcd(p, q) != 1:
            raise InputError(where, f"{text} is not reduced")
        return Fraction(p, q)
    return Fraction(int(text))


def format_rational(q: Fraction) -> str:
    return str(q)


def _get(obj, key, where, kind=None, required=True):
    if not isinstance(obj, dict):
        raise InputError(where, "expected an object")
    if key not in obj:
        if required:
            raise InputError(f"{where}.{key}" if where else key, "missing")
        return None
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise InputError(f"{where}.{key}" if where else key, f"expected {kind.__name__}")
    return val


# --- input document ----------------------------------------------------------

@dataclass(frozen=True)
class AngleSpec:
    kind: str                     # "rational" | "algebraic" | "approx"
    rational: Optional[Fraction] = None
    poly: tuple = ()
    box: tuple = ()               # (re_lo, re_hi, im_lo, im_hi)
    value: Optional[str] = None
    precision: Optional[str] = None

    @classmethod
    def parse(cls, obj, where) -> "AngleSpec":
        if not isinstance(obj, dict) or len(obj) != 1:
            raise InputError(where, "angle must be one of {rational}, {algebraic}, {approx}")
        (kind, body), = obj.items()
        if kind == "rational":
            q = parse_rational(body, f"{where}.rational")
            if not 0 <= q < 1:
                raise InputError(f"{where}.rational", "angle in turns must lie in [0, 1)")
            return cls("rational", rational=q)
        if kind == "algebraic":
            poly = _get(body, "poly", f"{where}.algebraic", list)
            coeffs = tuple(parse_rational(c, f"{where}.algebraic.poly[{i}]") for i, c in enumerate(poly))
            box = _get(body, "box", f"{where}.algebraic", dict)
            re_ = _get(box, "re", f"{where}.algebraic.box", list)
            im_ = _get(box, "im", f"{where}.algebraic.box", list)
            if len(re_) != 2 or len(im_) != 2:
                raise InputError(f"{where}.algebraic.box", "re and im need [lo, hi]")
            corners = tuple(parse_rational(v, f"{where}.algebraic.box") for v in (*re_, *im_))
            if corners[0] > corners[1] or corners[2] > corners[3]:
                raise InputError(f"{where}.algebraic.box", "box corners out of order")
            return cls("algebraic", poly=coeffs, box=corners)
        if kind == "approx":
            value = _get(body, "value", f"{where}.approx", str)
            prec = _get(body, "precision", f"{where}.approx", str)
            for v, w in ((value, "value"), (prec, "precision")):
                if not _DECIMAL.match(v):
                    raise InputError(f"{where}.approx.{w}", f"not a decimal: {v!r}")
            if Fraction(prec) <= 0:
                raise InputError(f"{where}.approx.precision", "must be positive")
            return cls("approx", value=value, precision=prec)
        raise InputError(where, f"unknown angle kind {kind!r}")

    def to_json(self):
        if self.kind == "rational":
            return {"rational": format_rational(self.rational)}
        if self.kind == "algebraic":
            b = [format_rational(x) for x in self.box]
            return {"algebraic": {"poly": [format_rational(c) for c in self.poly],
                                  "box": {"re": b[:2], "im": b[2:]}}}
        return {"approx": {"value": self.value, "precision": self.precision}}

    def build(self, where: str) -> AngleDescriptor:
        if self.kind == "rational":
            return AngleDescriptor.of_rational(self.rational)
        if self.kind == "approx":
            v, p = Fraction(self.value), Fraction(self.precision)
            return AngleDescriptor.of_approximate(Interval(v - p, v + p))
        poly = RatPoly(self.poly)
        if poly.degree < 1:
            raise InputError("angle.algebraic.poly", "needs a non-constant polynomial")
        box = ComplexBox.from_corners(*self.box)
        hits = []
        for f, _ in poly.factor():
            for r in distinct_roots(f):
                for bits in (16, 32, 64, 128, 256):
                    e = r.enclosure(bits)
                    if box.contains(e):
                        hits.append(r)
                        break
                    if not box.intersects(e):
                        break
        if len(hits) != 1:
            raise InputError("angle.algebraic.box", f"box must isolate exactly one root (found {len(hits)})")
        beta: AlgebraicRoot = hits[0]
        abs2 = modulus_squared(beta)
        if not (abs2.is_rational and abs2.value == 1):
            raise InputError("angle.algebraic", "the algebraic number must have modulus one")
        return angle_of_unit(beta)


@dataclass(frozen=True)
class TermSpec:
    kind: str
    modulus: Fraction
    coefficient: Optional[tuple] = None
    angle: Optional[AngleSpec] = None
    w: Optional[Fraction] = None
    phi_turns: Optional[Fraction] = None

    @classmethod
    def parse(cls, obj, kind, where) -> "TermSpec":
        modulus = parse_rational(_get(obj, "modulus", where), f"{where}.modulus")
        if modulus <= 0:
            raise InputError(f"{where}.modulus", "must be positive")
        if kind != "pair":
            c = parse_rational(_get(obj, "coefficient", where), f"{where}.coefficient")
            return cls(kind, modulus, (c, Fraction(0)))
        angle = AngleSpec.parse(_get(obj, "angle", where), f"{where}.angle")
        if angle.kind == "rational" and angle.rational in (0, Fraction(1, 2)):
            raise InputError(f"{where}.angle", "angles 0 and 1/2 are real roots; list them as such")
        if "coefficient" in obj:
            if "w" in obj or "phi_turns" in obj:
                raise InputError(where, "give either coefficient or (w, phi_turns), not both")
            c = _get(obj, "coefficient", where, dict)
            re_ = parse_rational(_get(c, "re", f"{where}.coefficient"), f"{where}.coefficient.re")
            im_ = parse_rational(_get(c, "im", f"{where}.coefficient"), f"{where}.coefficient.im")
            return cls(kind, modulus, (re_, im_), angle)
        w = parse_rational(_get(obj, "w", where), f"{where}.w")
        phi = parse_rational(_get(obj, "phi_turns", where), f"{where}.phi_turns")
        return cls(kind, modulus, None, angle, w, phi)

    def to_json(self):
        out = {"modulus": format_rational(self.modulus)}
        if self.kind != "pair":
            out["coefficient"] = format_rational(self.coefficient[0])
            return out
        out["angle"] = self.angle.to_json()
        if self.coefficient is not None:
            out["coefficient"] = {"re": format_rational(self.coefficient[0]),
                                  "im": format_rational(self.coefficient[1])}
        else:
            out["w"] = format_rational(self.w)
            out["phi_turns"] = format_rational(self.phi_turns)
        return out

    def build(self, where: str) -> RootTerm:
        angle = self.angle.build(f"{where}.angle") if self.angle else None
        try:
            return RootTerm(self.kind, self.modulus, angle, self.coefficient, self.w, self.phi_turns)
        except ValueError as exc:
            raise InputError(where, str(exc)) from None


@dataclass(frozen=True)
class InputDocument:
    mode: str
    coeffs: tuple = ()
    initials: tuple = ()
    terms: tuple = ()
    remainder: Optional[tuple] = None      # ("exponential", omega) | ("geometric", coefficient, ratio)

    @classmethod
    def parse(cls, obj) -> "InputDocument":
        mode = _get(obj, "mode", "", str)
        if mode == "recurrence":
            body = _get(obj, "recurrence", "", dict)
            coeffs = _get(body, "coeffs", "recurrence", list)
            initials = _get(body, "initials", "recurrence", list)
            if not coeffs:
                raise InputError("recurrence.coeffs", "needs at least one coefficient")
            if len(initials) != len(coeffs):
                raise InputError("recurrence.initials", f"need {len(coeffs)} values, got {len(initials)}")
            return cls(mode,
                       tuple(parse_rational(c, f"recurrence.coeffs[{i}]") for i, c in enumerate(coeffs)),
                       tuple(parse_rational(c, f"recurrence.initials[{i}]") for i, c in enumerate(initials)))
        if mode == "root_form":
            body = _get(obj, "root_form", "", dict)
            terms = []
            for key, kind in (("positive_real", "positive_real"), ("negative_real", "negative_real"),
                              ("pairs", "pair")):
                items = body.get(key, [])
                if isinstance(items, dict):
                    items = [items]
                if not isinstance(items, list):
                    raise InputError(f"root_form.{key}", "expected an object or a list")
                for i, item in enumerate(items):
                    terms.append(TermSpec.parse(item, kind, f"root_form.{key}[{i}]"))
            unknown = set(body) - {"positive_real", "negative_real", "pairs", "remainder"}
            if unknown:
                raise InputError("root_form", f"unknown keys {sorted(unknown)}")
            rem = None
            if "remainder" in body:
                rem = _parse_remainder(body["remainder"], "root_form.remainder")
            if not terms:
                raise InputError("root_form", "needs at least one term")
            return cls(mode, terms=tuple(terms), remainder=rem)
        raise InputError("mode", f"expected 'recurrence' or 'root_form', got {mode!r}")

    def to_json(self):
        if self.mode == "recurrence":
            return {"mode": self.mode, "recurrence": {"coeffs": [format_rational(c) for c in self.coeffs],
                                                      "initials": [format_rational(c) for c in self.initials]}}
        body: dict = {}
        for t in self.terms:
            key = {"pair": "pairs"}.get(t.kind, t.kind)
            body.setdefault(key, []).append(t.to_json())
        if self.remainder is not None:
            if self.remainder[0] == "exponential":
                body["remainder"] = {"exponential": format_rational(self.remainder[1])}
            else:
                body["remainder"] = {"geometric": {"coefficient": format_rational(self.remainder[1]),
                                                   "ratio": format_rational(self.remainder[2])}}
        return {"mode": self.mode, "root_form": body}

    def build(self):
        if self.mode == "recurrence":
            return Recurrence.create(self.coeffs, self.initials)
        terms = [t.build(f"root_form.term[{i}]") for i, t in enumerate(self.terms)]
        rem = None
        if self.remainder is not None:
            if self.remainder[0] == "exponential":
                rem = RemainderModel("exponential", self.remainder[1], description="given bound")
            else:
                rem = RemainderModel.geometric(self.remainder[1], self.remainder[2])
        return RootFormSpec(terms, rem)


def _parse_remainder(obj, where):
    if not isinstance(obj, dict) or len(obj) != 1:
        raise InputError(where, "expected {exponential: omega} or {geometric: {coefficient, ratio}}")
    (kind, body), = obj.items()
    if kind == "exponential":
        omega = parse_rational(body, f"{where}.exponential")
        if not 0 < omega < 1:
            raise InputError(f"{where}.exponential", "need 0 < omega < 1")
        return ("exponential", omega)
    if kind == "geometric":
        c = parse_rational(_get(body, "coefficient", f"{where}.geometric"), f"{where}.geometric.coefficient")
        q = parse_rational(_get(body, "ratio", f"{where}.geometric"), f"{where}.geometric.ratio")
        if not abs(q) < 1:
            raise InputError(f"{where}.geometric.ratio", "need |ratio| < 1")
        return ("geometric", c, q)
    raise InputError(where, f"unknown remainder kind {kind!r}")


def load_document(path: str) -> InputDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(path, str(exc)) from None
    try:
        obj = json.loads(text, parse_float=lambda s: float(s))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return InputDocument.parse(obj)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str)


# --- subcommands -------------------------------------------------------------

def cmd_analyze(args) -> int:
    doc = load_document(args.file)
    item = doc.build()
    opts = ClassifyOptions(terms=args.terms, relation_bound=args.relation_bound, budget=args.precision_budget)
    report = classify(item, opts)
    body = report.to_json()
    body["input"] = doc.to_json()
    body["precision_budget"] = opts.budget or precision_budget()
    print(dumps(body))
    return EXIT_OK


def cmd_simulate(args) -> int:
    doc = load_document(args.file)
    item = doc.build()
    if isinstance(item, Recurrence):
        sg, summary = signs(item, args.terms)
        source = "exact"
    else:
        from .powersum import summarize
        sg = simulate_root_form(item, args.terms)
        summary = summarize(sg)
        source = "interval"
    body = {"signs": "".join(sg), "summary": summary.to_json(), "terms": args.terms, "source": source,
            "all_zero": all(s == "0" for s in sg)}
    print(dumps(body))
    return EXIT_OK


def _parse_xi(text: str):
    if _RATIONAL.match(text):
        return parse_rational(text, "--xi")
    if _DECIMAL.match(text):
        return text
    raise InputError("--xi", f"not a fraction or decimal: {text!r}")


def cmd_multiples(args) -> int:
    x1, x2 = (_parse_xi(t) for t in args.xi)
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        if isinstance(x1, Fraction) and isinstance(x2, Fraction):
            x1, x2 = x1 % 1, x2 % 1
            pts = multiples_mod1(x1.numerator, x1.denominator, x2.numerator, x2.denominator)
            w.writerow(["n", "x", "y"])
            period = len(pts)
            count = args.count if args.count is not None else period
            for n in range(count):
                w.writerow([n, format_rational(n * x1 % 1), format_rational(n * x2 % 1)])
        else:
            from mpmath import mp, mpf, frac
            count = args.count if args.count is not None else 100
            w.writerow(["n", "x", "y", "approximate"])
            with mp.workdps(30):
                a, b = (mpf(str(v)) for v in (x1, x2))
                for n in range(count):
                    w.writerow([n, mp.nstr(frac(n * a), 15), mp.nstr(frac(n * b), 15), "true"])
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def cmd_empty_square(args) -> int:
    (a1, a2), (b1, b2) = args.num, args.den
    swap = b1 < b2
    if swap:
        a1, a2, b1, b2 = a2, a1, b2, b1
    wit = empty_square_witness(a1, b1, a2, b2)
    if wit is None:
        print("none")
        return EXIT_OK
    c1, c2 = wit.center
    if swap:
        c1, c2 = c2, c1
    print(f"center: {format_rational(c1)} {format_rational(c2)}")
    return EXIT_OK


def _sqrt_text(n: int) -> str:
    r = isqrt(n)
    return str(r) if r * r == n else f"\u221a{n}"


def cmd_lattice(args) -> int:
    a1, a2 = args.a
    try:
        L = LgLattice(args.g, a1 % args.g, a2 % args.g)
    except ValueError as exc:
        raise InputError("--a", str(exc)) from None
    if args.member is not None:
        print("true" if membership(L, tuple(args.member)) else "false")
    elif args.basis:
        b = reduced_basis(L)
        print(f"basis: {b.v1} {b.v2}  det: {abs(b.det)}")
    elif args.minima:
        m = successive_minima(L)
        print(f"{_sqrt_text(m.lambda1_sq)}, {_sqrt_text(m.lambda2_sq)}")
        print(f"witnesses: {m.w1} {m.w2}")
    elif args.always_hit:
        rep = square_always_hit(args.g, a1 % args.g, a2 % args.g)
        status = "certified" if rep.certified else "NOT certified"
        print(f"{status}: {rep.branch}")
        data = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in rep.data.items()}
        print(dumps(data))
    else:
        print(str(L))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="recsign", description="Sign behaviour of linear recurrence sequences.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="classify a recurrence or root-form spectrum")
    a.add_argument("file")
    a.add_argument("--terms", type=int, default=200, help="simulation length for the cross-check")
    a.add_argument("--relation-bound", type=int, default=50, help="bound U for integer relation search")
    a.add_argument("--precision-budget", type=int, default=None, help="maximum working precision in bits")
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("simulate", help="exact sign table")
    s.add_argument("file")
    s.add_argument("--terms", type=int, default=100)
    s.add_argument("--precision-budget", type=int, default=None)
    s.set_defaults(func=cmd_simulate)

    m = sub.add_parser("multiples", help="points n*(xi1, xi2) mod 1 as CSV")
    m.add_argument("--xi", nargs=2, required=True, metavar=("XI1", "XI2"))
    m.add_argument("--count", type=int, default=None)
    m.add_argument("--out", default=None)
    m.set_defaults(func=cmd_multiples)

    e = sub.add_parser("empty-square", help="centre of an empty half-side-1/4 square, or 'none'")
    e.add_argument("--num", type=int, nargs=2, required=True, metavar=("A1", "A2"))
    e.add_argument("--den", type=int, nargs=2, required=True, metavar=("B1", "B2"))
    e.set_defaults(func=cmd_empty_square)

    lat = sub.add_parser("lattice", help="queries on L_g(a1, a2)")
    lat.add_argument("--g", type=int, required=True)
    lat.add_argument("--a", type=int, nargs=2, required=True, metavar=("A1", "A2"))
    grp = lat.add_mutually_exclusive_group()
    grp.add_argument("--basis", action="store_true")
    grp.add_argument("--minima", action="store_true")
    grp.add_argument("--member", type=int, nargs=2, metavar=("U1", "U2"))
    grp.add_argument("--always-hit", action="store_true")
    lat.set_defaults(func=cmd_lattice)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    budget = getattr(args, "precision_budget", None)
    if budget is not None and budget < 64:
        print("error: --precision-budget must be at least 64", file=sys.stderr)
        return EXIT_INPUT
    saved = os.environ.get("OSC_PRECISION_BUDGET")
    if budget is not None:
        os.environ["OSC_PRECISION_BUDGET"] = str(budget)
    start = time.perf_counter()
    try:
        code = args.func(args)
    except (InputError, HypothesisViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    finally:
        # main may run inside a longer-lived process; leave the environment as found
        if budget is not None:
            if saved is None:
                os.environ.pop("OSC_PRECISION_BUDGET", None)
            else:
                os.environ["OSC_PRECISION_BUDGET"] = saved
    print(f"# {args.command} finished in {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return code

if __name__ == "__main__":
    sys.exit(main())
