import json
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from recsign.cli import InputDocument, InputError, main, parse_rational


def write(tmp_path, obj, name="in.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rec(coeffs, initials):
    return {"mode": "recurrence", "recurrence": {"coeffs": coeffs, "initials": initials}}


FIB = rec(["1", "1"], ["0", "1"])
ALT = rec(["-2"], ["1"])
EXAMPLE = {"mode": "root_form", "root_form": {
    "positive_real": {"modulus": "3", "coefficient": "0"},
    "pairs": [{"modulus": "2", "angle": {"rational": "7/10"}, "coefficient": {"re": "1/2", "im": "0"}},
              {"modulus": "2", "angle": {"rational": "1/5"}, "coefficient": {"re": "1/2", "im": "0"}}]}}


# --- analyze -------------------------------------------------------------------

def test_analyze_fibonacci(tmp_path, capsys):
    code, out, err = run(capsys, "analyze", write(tmp_path, FIB))
    assert code == 0
    body = json.loads(out)
    assert body["verdict"]["kind"] == "EventuallyPositive"
    assert body["cross_check"]["status"] == "agree"
    assert body["precision_budget"] == 4096
    assert err.startswith("# analyze finished in")


def test_analyze_alternating(tmp_path, capsys):
    code, out, _ = run(capsys, "analyze", write(tmp_path, ALT))
    assert code == 0 and json.loads(out)["verdict"]["kind"] == "Oscillates"


def test_analyze_example_lattice_route(tmp_path, capsys):
    code, out, _ = run(capsys, "analyze", write(tmp_path, EXAMPLE))
    v = json.loads(out)["verdict"]
    assert code == 0
    assert v["kind"] == "Oscillates" and v["witnesses"]["lattice"] == "L_5(2,1)"


def test_analyze_algebraic_angle(tmp_path, capsys):
    # (3 + 4i)/(3 - 4i) = (-7 + 24i)/25 is a root of 25t^2 + 14t + 25
    doc = {"mode": "root_form", "root_form": {"pairs": [{
        "modulus": "1", "w": "1", "phi_turns": "0",
        "angle": {"algebraic": {"poly": ["25", "14", "25"], "box": {"re": ["-1", "0"], "im": ["1/2", "1"]}}}}]}}
    code, out, _ = run(capsys, "analyze", write(tmp_path, doc))
    assert code == 0 and json.loads(out)["verdict"]["kind"] == "Oscillates"


def test_analyze_is_deterministic(tmp_path, capsys):
    path = write(tmp_path, EXAMPLE)
    outs = [run(capsys, "analyze", path)[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_analyze_deterministic_across_processes(tmp_path):
    path = write(tmp_path, FIB)
    cmd = [sys.executable, "-m", "recsign.cli", "analyze", path]
    a, b = (subprocess.run(cmd, capture_output=True, text=True, check=True).stdout for _ in range(2))
    assert a == b and a


@pytest.mark.parametrize("doc,where", [
    (rec(["2/4"], ["1"]), "recurrence.coeffs[0]"),
    (rec(["1/0"], ["1"]), "recurrence.coeffs[0]"),
    (rec([1.5], ["1"]), "recurrence.coeffs[0]"),
    (rec(["1", "1"], ["1"]), "recurrence.initials"),
    ({"mode": "matrix"}, "mode"),
    ({"mode": "root_form", "root_form": {"pairs": [{"modulus": "1", "angle": {"rational": "1/2"},
                                                    "w": "1", "phi_turns": "0"}]}}, "root_form.pairs[0].angle"),
    ({"mode": "root_form", "root_form": {"pairs": [{"modulus": "1", "angle": {"rational": "1/3"}, "w": "1"}]}},
     "root_form.pairs[0].phi_turns"),
])
def test_analyze_input_errors(tmp_path, capsys, doc, where):
    code, out, err = run(capsys, "analyze", write(tmp_path, doc))
    assert code == 2 and out == ""
    assert where in err


def test_malformed_json_reports_position(tmp_path, capsys):
    code, _, err = run(capsys, "analyze", write(tmp_path, '{"mode": "recurrence",\n  oops}'))
    assert code == 2 and ":2:" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "analyze", "/nonexistent/input.json")
    assert code == 2


def test_algebraic_box_must_isolate(tmp_path, capsys):
    doc = {"mode": "root_form", "root_form": {"pairs": [{
        "modulus": "1", "w": "1", "phi_turns": "0",
        "angle": {"algebraic": {"poly": ["25", "14", "25"], "box": {"re": ["-1", "0"], "im": ["-1", "1"]}}}}]}}
    code, _, err = run(capsys, "analyze", write(tmp_path, doc))
    assert code == 2 and "exactly one root" in err


def test_algebraic_angle_needs_unit_modulus(tmp_path, capsys):
    doc = {"mode": "root_form", "root_form": {"pairs": [{
        "modulus": "1", "w": "1", "phi_turns": "0",
        "angle": {"algebraic": {"poly": ["2", "0", "1"], "box": {"re": ["-1", "1"], "im": ["1", "2"]}}}}]}}
    code, _, err = run(capsys, "analyze", write(tmp_path, doc))
    assert code == 2 and "modulus one" in err


def test_precision_exhaustion_exit_code(tmp_path, capsys, monkeypatch):
    from recsign import cli
    from recsign.exactnum import PrecisionExhausted

    def exhausted(*args, **kw):
        raise PrecisionExhausted("sign undecided at 64 bits")

    monkeypatch.setattr(cli, "classify", exhausted)
    code, out, err = run(capsys, "analyze", write(tmp_path, FIB), "--precision-budget", "64")
    assert code == 3 and out == ""
    assert "precision exhausted" in err


def test_budget_flag(tmp_path, capsys):
    code, out, _ = run(capsys, "analyze", write(tmp_path, FIB), "--precision-budget", "256")
    assert code == 0 and json.loads(out)["precision_budget"] == 256
    code, _, err = run(capsys, "analyze", write(tmp_path, FIB), "--precision-budget", "10")
    assert code == 2 and "at least 64" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


# --- simulate ------------------------------------------------------------------

def test_simulate_alternating(tmp_path, capsys):
    code, out, _ = run(capsys, "simulate", write(tmp_path, ALT), "--terms", "20")
    body = json.loads(out)
    assert code == 0
    assert body["signs"] == "+-" * 10 + "+"
    assert body["summary"]["sign_changes"] == 20


def test_simulate_fibonacci(tmp_path, capsys):
    _, out, _ = run(capsys, "simulate", write(tmp_path, FIB), "--terms", "50")
    body = json.loads(out)
    assert body["signs"][0] == "0" and set(body["signs"][1:]) == {"+"}
    assert body["summary"]["sign_changes"] == 0


def test_simulate_zero(tmp_path, capsys):
    _, out, _ = run(capsys, "simulate", write(tmp_path, rec(["1", "1"], ["0", "0"])))
    assert json.loads(out)["all_zero"] is True


def test_simulate_root_form(tmp_path, capsys):
    _, out, _ = run(capsys, "simulate", write(tmp_path, EXAMPLE), "--terms", "100")
    body = json.loads(out)
    assert body["source"] == "interval" and body["summary"]["sign_changes"] >= 10


# --- multiples / empty-square / lattice ---------------------------------------

def test_multiples_fifth_half(capsys):
    code, out, _ = run(capsys, "multiples", "--xi", "1/5", "1/2")
    rows = out.strip().splitlines()
    assert code == 0 and rows[0] == "n,x,y"
    pts = {tuple(r.split(",")[1:]) for r in rows[1:]}
    assert len(rows) == 11 and len(pts) == 10


def test_multiples_eighth_quarter(capsys):
    _, out, _ = run(capsys, "multiples", "--xi", "3/8", "1/4")
    rows = out.strip().splitlines()[1:]
    assert len(rows) == 8
    assert rows[3] == "3,1/8,3/4"


def test_multiples_zero(capsys):
    _, out, _ = run(capsys, "multiples", "--xi", "0/1", "0/1")
    assert out.strip().splitlines()[1:] == ["0,0,0"]


def test_multiples_decimal_flagged(capsys):
    _, out, _ = run(capsys, "multiples", "--xi", "0.4142135", "0.25", "--count", "5")
    rows = out.strip().splitlines()
    assert rows[0] == "n,x,y,approximate" and len(rows) == 6
    assert all(r.endswith(",true") for r in rows[1:])


def test_multiples_to_file(tmp_path, capsys):
    path = tmp_path / "pts.csv"
    run(capsys, "multiples", "--xi", "1/3", "1/7", "--out", str(path))
    assert len(path.read_text().splitlines()) == 22


def test_multiples_bad_fraction(capsys):
    code, _, err = run(capsys, "multiples", "--xi", "1/x", "1/2")
    assert code == 2


def test_empty_square_examples(capsys):
    code, out, _ = run(capsys, "empty-square", "--num", "1", "2", "--den", "5", "5")
    assert code == 0 and out.startswith("center: ")
    code, out, _ = run(capsys, "empty-square", "--num", "1", "3", "--den", "7", "7")
    assert code == 0 and out.strip() == "none"
    code, out, err = run(capsys, "empty-square", "--num", "1", "1", "--den", "4", "4")
    assert code == 2 and out == ""


def test_empty_square_swapped_denominators(capsys):
    _, out, _ = run(capsys, "empty-square", "--num", "1", "1", "--den", "4", "8")
    c1, c2 = (Fraction(x) for x in out.split()[1:])
    # the reported centre leaves the open square around it free of orbit points
    for n in range(8):
        p = (Fraction(n, 4) % 1, Fraction(n, 8) % 1)
        assert not all(min(abs(p[i] - c) % 1, 1 - abs(p[i] - c) % 1) < Fraction(1, 4) for i, c in enumerate((c1, c2)))


def test_lattice_queries(capsys):
    assert run(capsys, "lattice", "--g", "5", "--a", "2", "1", "--member", "1", "3")[1].strip() == "true"
    assert run(capsys, "lattice", "--g", "5", "--a", "2", "1", "--member", "1", "2")[1].strip() == "false"
    out = run(capsys, "lattice", "--g", "5", "--a", "2", "1", "--minima")[1]
    assert out.splitlines()[0] == "√5, √5"
    out = run(capsys, "lattice", "--g", "5", "--a", "2", "1", "--basis")[1]
    assert out.strip().endswith("det: 5")
    out = run(capsys, "lattice", "--g", "7", "--a", "1", "3", "--always-hit")[1]
    assert out.splitlines()[0] == "certified: small-g table"


def test_lattice_rejects_non_units(capsys):
    code, _, err = run(capsys, "lattice", "--g", "5", "--a", "5", "1", "--basis")
    assert code == 2


# --- document round trip ------------------------------------------------------

rationals = st.fractions(-20, 20, max_denominator=30)
rstr = rationals.map(str)
angle_docs = st.one_of(
    st.fractions(Fraction(1, 30), Fraction(29, 30), max_denominator=30)
      .filter(lambda q: q != Fraction(1, 2)).map(lambda q: {"rational": str(q)}),
    st.tuples(st.integers(1, 99), st.integers(1, 9)).map(
        lambda t: {"approx": {"value": f"0.{t[0]:02d}", "precision": f"1e-{t[1]}"}}),
)
pair_docs = st.one_of(
    st.fixed_dictionaries({"modulus": st.integers(1, 5).map(str), "angle": angle_docs,
                           "w": rstr, "phi_turns": rstr}),
    st.fixed_dictionaries({"modulus": st.integers(1, 5).map(str), "angle": angle_docs,
                           "coefficient": st.fixed_dictionaries({"re": rstr, "im": rstr})}),
)
root_docs = st.fixed_dictionaries(
    {"pairs": st.lists(pair_docs, min_size=1, max_size=3)},
    optional={"positive_real": st.fixed_dictionaries({"modulus": st.integers(1, 5).map(str), "coefficient": rstr}),
              "remainder": st.one_of(
                  st.fractions(Fraction(1, 9), Fraction(8, 9), max_denominator=9).map(lambda q: {"exponential": str(q)}),
                  st.fixed_dictionaries({"geometric": st.fixed_dictionaries(
                      {"coefficient": rstr, "ratio": st.sampled_from(["1/2", "-1/3", "0"])})}))},
).map(lambda b: {"mode": "root_form", "root_form": b})
rec_docs = st.integers(1, 4).flatmap(lambda d: st.tuples(
    st.lists(rstr, min_size=d, max_size=d), st.lists(rstr, min_size=d, max_size=d))).map(lambda t: rec(*t))


@settings(max_examples=200, deadline=None)
@given(st.one_of(rec_docs, root_docs))
def test_round_trip(obj):
    doc = InputDocument.parse(obj)
    again = InputDocument.parse(json.loads(json.dumps(doc.to_json())))
    assert again == doc
    assert again.to_json() == doc.to_json()


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(1, 10 ** 6))
def test_parse_rational_accepts_exactly_reduced(p, q):
    text = f"{p}/{q}"
    if Fraction(p, q).denominator == q:
        assert parse_rational(text) == Fraction(p, q)
    else:
        with pytest.raises(InputError):
            parse_rational(text)


def test_budget_flag_does_not_leak(tmp_path, capsys):
    import os
    before = os.environ.get("OSC_PRECISION_BUDGET")
    run(capsys, "analyze", write(tmp_path, FIB), "--precision-budget", "128")
    assert os.environ.get("OSC_PRECISION_BUDGET") == before
