from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cyquiver.dsl import DSLError, ProblemFile, emit, parse, parse_linear_combination, tokenize
from cyquiver.families import FamilySpec, build, test_matrix
from cyquiver.pathalg import CyclicPoly
from oracles import xyz

ANTI = """
# three loops, anticommutator potential
quiver { vertices: 1; arrows: x: 0->0, y: 0->0, z: 0->0; }
potential: x*y*z + x*z*y;
"""

Q1_HEAD = "quiver { vertices: 2; arrows: a1: 0->1, a2: 0->1, a3: 1->0, a4: 1->0; }\n"


def error_of(text):
    with pytest.raises(DSLError) as info:
        parse(text)
    return info.value


def test_anticommutator_file():
    p = parse(ANTI)
    q, w, _ = build(FamilySpec("one_vertex_deg3", k=3))
    assert p.quiver.names == ("x", "y", "z")
    assert p.potential.terms == w.terms
    assert p.degree == 3 and p.degree_bound is None and p.method is None


def test_order_block_reorders():
    p = parse(
        "quiver { vertices: 1; arrows: x: 0->0, y: 0->0; }\norder: y > x;\npotential: x*x*y + y*y*y;"
    )
    assert p.quiver.names == ("y", "x")
    assert p.potential == CyclicPoly.parse(p.quiver, "y*x*x + y*y*y")


def test_options_and_rationals():
    p = parse(ANTI.replace("+ x*z*y", "- 1/2*x*z*y") + "options { degree_bound: 7; method: hilbert; }")
    assert p.degree_bound == 7 and p.method == "hilbert"
    assert sorted(p.potential.terms.values()) == [Fraction(-1, 2), Fraction(1)]


def test_leading_minus():
    p = parse(Q1_HEAD + "potential: -a1*a3*a2*a4;")
    assert list(p.potential.terms.values()) == [-1]


def test_missing_potential_is_allowed():
    p = parse(Q1_HEAD)
    assert p.potential is None and p.degree is None


def test_non_composable_position():
    e = error_of(Q1_HEAD + "potential: a1*a1;")
    assert (e.line, e.col) == (2, 15)
    assert "cannot follow" in e.message
    assert str(e).startswith("line 2, column 15:")


def test_non_cycle():
    e = error_of(Q1_HEAD + "potential: a1*a3*a2;")
    assert "not a cycle" in e.message and (e.line, e.col) == (2, 12)


def test_mixed_degrees():
    e = error_of(Q1_HEAD + "potential: a1*a3 + a1*a3*a2*a4;")
    assert "mixed degrees" in e.message and e.col == 20


@pytest.mark.parametrize(
    "text, fragment",
    [
        (Q1_HEAD + "potential: a1*a5;", "unknown arrow 'a5'"),
        ("quiver { vertices: 1; arrows: x: 0->0, x: 0->0; }", "declared twice"),
        ("quiver { vertices: 1; arrows: x: 0->1; }", "out of range"),
        ("quiver { vertices: 0; arrows: x: 0->0; }", "must be positive"),
        (Q1_HEAD + "potential: 1/0*a1*a3;", "zero denominator"),
        (Q1_HEAD + "options { method: magic; }", "unknown method"),
        (Q1_HEAD + "options { degree_bound: 0; }", "must be positive"),
        (Q1_HEAD + "order: a1 > a2;", "omits"),
        (Q1_HEAD + "order: a1 > a1;", "listed twice"),
        (Q1_HEAD + "potential: a1*a3 a2;", "expected ';'"),
        ("quiver { vertices: 1; arrows: x: 0->0; } extra", "after the last block"),
        ("quiver { vertices: 1; arrows: x: 0->0; } $", "unexpected character"),
        ("quiver {", "expected 'vertices'"),
    ],
)
def test_errors_are_positioned(text, fragment):
    e = error_of(text)
    assert fragment in e.message
    assert e.line >= 1 and e.col >= 1


def test_error_at_end_of_input():
    e = error_of("quiver { vertices: 1; arrows: x: 0->0;")
    assert "end of input" in e.message


def test_tokenize_tracks_lines():
    toks = tokenize("a\n  b # c\nd")
    assert [(t.text, t.line, t.col) for t in toks[:-1]] == [("a", 1, 1), ("b", 2, 3), ("d", 3, 1)]
    assert toks[-1].kind == "eof"


def test_linear_combination():
    q = xyz()
    assert parse_linear_combination(q, "x*y - 2*y*x + x*y") == {(0, 1): 2, (1, 0): -2}
    with pytest.raises(DSLError):
        parse_linear_combination(q, "x*y +")


@pytest.mark.parametrize("spec", test_matrix(), ids=lambda s: s.label())
def test_family_round_trip(spec):
    q, w, _ = build(spec)
    p = ProblemFile(q, w, 9, "condsup")
    back = parse(emit(p))
    assert back.quiver == q and back.potential == w
    assert (back.degree_bound, back.method) == (9, "condsup")
    assert emit(back) == emit(p)


def test_emit_without_potential():
    q, _, _ = build(FamilySpec("Q1", d=4))
    text = emit(ProblemFile(q))
    assert "potential" not in text and "options" not in text
    assert parse(text).quiver == q


ALPHABET = list("quiver{}vertices:arrows;->,xyz0123potentialorder>options*+-/#\n ")


@given(st.text(alphabet=ALPHABET, max_size=80))
def test_fuzz_only_dsl_errors(text):
    try:
        parse(text)
    except DSLError as e:
        assert e.line >= 1 and e.col >= 1


@given(st.text(max_size=40))
def test_fuzz_suffix_after_valid_header(tail):
    try:
        parse(Q1_HEAD + tail)
    except DSLError as e:
        assert e.line >= 1 and e.col >= 1
