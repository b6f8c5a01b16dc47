import numpy as np
import pytest
from hypothesis import given

from cyquiver.quiver import (
    Quiver,
    QuiverError,
    degree_condition,
    degree_defects,
    incidence_matrix,
    is_connected,
    is_strongly_connected,
)
from cyquiver.families import FamilySpec, build
from oracles import loops
from strategies import quivers

Q1 = Quiver.from_edges(2, [("a1", 0, 1), ("a2", 0, 1), ("a3", 1, 0), ("a4", 1, 0)])
Q2 = Quiver.from_edges(2, [("b1", 0, 0), ("b2", 1, 1), ("b3", 1, 0), ("b4", 0, 1)])


def test_incidence_q2():
    assert incidence_matrix(Q2).tolist() == [[1, 1], [1, 1]]


def test_incidence_q1():
    assert incidence_matrix(Q1).tolist() == [[0, 2], [2, 0]]


def test_incidence_no_arrows():
    assert incidence_matrix(Quiver(3, ())).tolist() == [[0] * 3] * 3


def test_incidence_counts_head_then_tail():
    q = Quiver.from_edges(2, [("u", 0, 1)])
    assert incidence_matrix(q)[1, 0] == 1 and incidence_matrix(q)[0, 1] == 0


def test_connectivity_examples():
    assert is_connected(Q1)
    assert not is_connected(Quiver.from_edges(2, [("x", 0, 0), ("y", 1, 1)]))
    assert is_connected(Quiver(1, ()))
    assert is_strongly_connected(Q2)
    assert not is_strongly_connected(Quiver.from_edges(2, [("u", 0, 1)]))
    assert is_strongly_connected(loops(1))


def test_degree_condition_examples():
    assert degree_condition(Q1)
    assert not degree_condition(loops(1))
    assert degree_condition(loops(2))
    assert degree_defects(loops(1)) == [(0, "out", 1), (0, "in", 1)]


def test_validation():
    with pytest.raises(QuiverError):
        Quiver.from_edges(1, [("x", 0, 1)])
    with pytest.raises(QuiverError):
        Quiver.from_edges(1, [("x", 0, 0), ("x", 0, 0)])
    with pytest.raises(QuiverError):
        Quiver(0, ())
    with pytest.raises(QuiverError):
        loops(2).index("nope")


def test_order_is_list_position():
    q = loops(3)
    assert q.compare_arrows(0, 1) == 1
    assert q.compare_arrows(2, 0) == -1
    assert q.compare_arrows(1, 1) == 0
    r = q.reordered(["X3", "X1", "X2"])
    assert r.names == ("X3", "X1", "X2")
    with pytest.raises(QuiverError):
        q.reordered(["X1", "X2"])


def test_words():
    assert Q1.is_path((0, 2))
    assert not Q1.is_path((0, 0))
    assert Q1.parse_word("a1*a3") == (0, 2)
    assert Q1.format_word((0, 2)) == "a1*a3"
    assert Q1.word_head((0, 2)) == 1 and Q1.word_tail((0, 2)) == 1


def test_family_quivers_are_admissible():
    for spec in (FamilySpec("Q1", d=4), FamilySpec("Q2", d=4), FamilySpec("cyclic", p=(2, 3), ell=2)):
        q, _, _ = build(spec)
        assert degree_condition(q) and is_strongly_connected(q)


@given(quivers())
def test_reverse_transposes_incidence(q):
    assert np.array_equal(incidence_matrix(q).T, incidence_matrix(q.reversed()))


@given(quivers())
def test_incidence_sum_is_arrow_count(q):
    assert incidence_matrix(q).sum() == q.arrow_count


@given(quivers())
def test_strong_implies_weak(q):
    if is_strongly_connected(q):
        assert is_connected(q)


@given(quivers())
def test_degree_condition_matches_matrix(q):
    m = incidence_matrix(q)
    expected = bool((m.sum(axis=0) >= 2).all() and (m.sum(axis=1) >= 2).all())
    assert degree_condition(q) == expected
