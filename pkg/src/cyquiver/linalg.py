"""Exact and modular rank computations for sparse rational matrices.

Matrices are given as an iterable of sparse rows, each a ``{column: value}``
dict with ``Fraction`` or ``int`` values.  Three independent routes exist:

* :func:`rank_mod_p` -- sparse elimination over GF(p).  A lower bound for the
  rank over Q, and equal to it unless p divides a maximal nonzero minor.
* :func:`rank_exact` -- sparse fraction-free elimination over the integers.
* :func:`bareiss_rank` -- dense Bareiss elimination, used as a test oracle.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

import numpy as np

PRIMES = (2305843009213693951, 4611686018427387847, 2147483647)

SparseRow = Mapping[int, object]


class UnluckyPrime(ArithmeticError):
    """A denominator vanishes modulo the chosen prime."""


def _to_mod(v, p: int) -> int:
    if isinstance(v, Fraction):
        den = v.denominator % p
        if den == 0:
            raise UnluckyPrime(p)
        return v.numerator * pow(den, -1, p) % p
    return int(v) % p


def rank_mod_p(rows: Iterable[SparseRow], p: int = PRIMES[0]) -> int:
    """Rank over GF(p) by sparse elimination, pivoting on the largest column."""
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        row = {k: r for k, v in raw.items() if (r := _to_mod(v, p))}
        while row:
            c = max(row)
            piv = pivots.get(c)
            if piv is None:
                inv = pow(row[c], -1, p)
                pivots[c] = {k: v * inv % p for k, v in row.items()}
                break
            f = row[c]
            for k, v in piv.items():
                nv = (row.get(k, 0) - f * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return len(pivots)


def _integer_row(raw: SparseRow) -> dict[int, int]:
    vals = {k: Fraction(v) for k, v in raw.items() if v}
    if not vals:
        return {}
    den = lcm(*(v.denominator for v in vals.values()))
    row = {k: int(v * den) for k, v in vals.items()}
    g = gcd(*row.values())
    return {k: v // g for k, v in row.items()}


def rank_exact(rows: Iterable[SparseRow]) -> int:
    """Rank over Q by sparse fraction-free elimination with content removal."""
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        row = _integer_row(raw)
        while row:
            c = max(row)
            piv = pivots.get(c)
            if piv is None:
                pivots[c] = row
                break
            a, b = piv[c], row[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * v for k, v in row.items()}
            for k, v in piv.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            if new:
                g = gcd(*new.values())
                if g > 1:
                    new = {k: v // g for k, v in new.items()}
            row = new
    return len(pivots)


def bareiss_rank(matrix: Sequence[Sequence[object]]) -> int:
    """Dense fraction-free Bareiss elimination; exact rank of a rational matrix."""
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    # clear denominators row by row; the rank is unchanged
    m = []
    for r in rows:
        fr = [Fraction(v) for v in r]
        den = lcm(*(v.denominator for v in fr)) if fr else 1
        m.append([int(v * den) for v in fr])
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        if rank == n_rows:
            break
        piv = next((i for i in range(rank, n_rows) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        for i in range(rank + 1, n_rows):
            ri = m[i]
            f = ri[col]
            for j in range(col + 1, n_cols):
                ri[j] = (pr[col] * ri[j] - f * pr[j]) // prev
            ri[col] = 0
        prev = pr[col]
        rank += 1
    return rank


def dense_rank_mod_p(matrix: np.ndarray, p: int = 2147483647) -> int:
    """Rank of an integer matrix over GF(p) with vectorised int64 row operations.

    ``p`` must stay below 2**31 so products fit in int64.
    """
    if p >= 2**31:
        raise ValueError("dense modular rank needs p < 2**31")
    a = np.array(matrix, dtype=np.int64) % p
    n_rows, n_cols = a.shape
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, col]), -1, p)
        a[rank] = a[rank] * inv % p
        below = np.nonzero(a[rank + 1 :, col])[0] + rank + 1
        if below.size:
            f = a[below, col][:, None]
            a[below] = (a[below] - f * a[rank]) % p
        rank += 1
    return rank


def fraction_inverse(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over Q; raises ``ZeroDivisionError`` when singular."""
    n = len(matrix)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]
