from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cyquiver.linalg import (
    PRIMES,
    UnluckyPrime,
    bareiss_rank,
    dense_rank_mod_p,
    fraction_inverse,
    rank_exact,
    rank_mod_p,
)


def sparse(matrix):
    return [{j: v for j, v in enumerate(row) if v} for row in matrix]


def test_identity_rank():
    m = np.eye(4, dtype=int).tolist()
    assert rank_exact(sparse(m)) == rank_mod_p(sparse(m)) == bareiss_rank(m) == 4


def test_dependent_rows():
    m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank_exact(sparse(m)) == bareiss_rank(m) == 2


def test_rational_entries():
    m = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3, 2), 1]]
    assert rank_exact(sparse(m)) == bareiss_rank(m) == 1


def test_prime_sensitivity():
    # determinant 7: full rank over Q and mod most primes, rank 1 mod 7
    m = [[1, 2], [3, 13]]
    assert rank_exact(sparse(m)) == 2
    assert rank_mod_p(sparse(m), 7) == 1
    assert dense_rank_mod_p(np.array(m), 7) == 1


def test_unlucky_denominator():
    with pytest.raises(UnluckyPrime):
        rank_mod_p([{0: Fraction(1, 7)}], 7)


def test_empty():
    assert rank_exact([]) == rank_mod_p([]) == 0
    assert bareiss_rank([]) == 0
    assert rank_exact([{}, {}]) == 0


def test_dense_mod_p_rejects_large_prime():
    with pytest.raises(ValueError):
        dense_rank_mod_p(np.eye(2, dtype=int), PRIMES[0])


def test_fraction_inverse():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    inv = fraction_inverse(m)
    assert inv == [[1, -1], [-1, 2]]
    with pytest.raises(ZeroDivisionError):
        fraction_inverse([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]])


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
def test_three_routes_agree(m):
    r = bareiss_rank(m)
    assert rank_exact(sparse(m)) == r
    for p in PRIMES:
        assert rank_mod_p(sparse(m), p) == r
    assert dense_rank_mod_p(np.array(m), PRIMES[2]) == r


@given(matrices, st.integers(1, 5))
def test_rank_invariant_under_scaling_and_transpose(m, k):
    r = bareiss_rank(m)
    scaled = [[Fraction(v, k) for v in row] for row in m]
    assert rank_exact(sparse(scaled)) == r
    assert bareiss_rank(np.array(m).T.tolist()) == r



@given(matrices, st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_mod_p_is_lower_bound(m, p):
    assert rank_mod_p(sparse(m), p) <= rank_exact(sparse(m))
