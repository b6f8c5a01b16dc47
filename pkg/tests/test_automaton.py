from hypothesis import given, strategies as st

from cyquiver.automaton import FactorAutomaton
from oracles import contains_factor

words = st.lists(st.integers(0, 2), min_size=0, max_size=12).map(tuple)
patterns = st.lists(st.lists(st.integers(0, 2), min_size=1, max_size=4).map(tuple), min_size=1, max_size=5)


def test_find_first_by_end():
    auto = FactorAutomaton([(1, 2), (0, 1, 2), (2,)])
    # (0,1,2) and (1,2) end at the same spot but (2,) alone ends there too
    start, idx = auto.find((0, 1, 2))
    assert start + len(auto.patterns[idx]) == 3


def test_find_none():
    auto = FactorAutomaton([(0, 0)])
    assert auto.find((0, 1, 0, 1)) is None


def test_find_all_overlapping():
    auto = FactorAutomaton([(0, 0)])
    assert auto.find_all((0, 0, 0)) == [(0, 0), (1, 0)]


def test_suffix_pattern_through_failure_link():
    auto = FactorAutomaton([(0, 1, 2, 3), (1, 2)])
    assert auto.find((0, 1, 2, 0)) == (1, 1)


@given(patterns, words)
def test_find_matches_brute_force(pats, w):
    auto = FactorAutomaton(pats)
    hit = auto.find(w)
    assert (hit is not None) == any(contains_factor(w, p) for p in pats)
    if hit is not None:
        start, idx = hit
        assert w[start : start + len(pats[idx])] == pats[idx]


@given(patterns, words)
def test_find_all_matches_brute_force(pats, w):
    auto = FactorAutomaton(pats)
    brute = set()
    for i, p in enumerate(pats):
        for s in range(len(w) - len(p) + 1):
            if w[s : s + len(p)] == p:
                # duplicated patterns report the first index
                brute.add((s, pats.index(p)))
    assert set(auto.find_all(w)) == brute
