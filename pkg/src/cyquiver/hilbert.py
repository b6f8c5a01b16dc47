"""Matrix-valued truncated power series over Q and the Calabi-Yau Hilbert series.

A :class:`MatSeries` stores ``C_0 .. C_N`` as ``s x s`` numpy object arrays of
``Fraction``.  Products and sums keep the smaller truncation, so a coefficient
beyond what both operands know can never be read.

The expected series of a good superpotential of degree ``d`` on ``Q`` is the
inverse of ``1 - M t + M^T t^(d-1) - t^d`` with ``M`` the (head, tail)
incidence matrix.  Its coefficients are the matrix dimensions
``(h_k)_{ij} = dim i A_k j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import fraction_inverse
from .pathalg import format_rational
from .quiver import Quiver, incidence_matrix


def _frac_matrix(m, s: int | None = None) -> np.ndarray:
    a = np.asarray(m, dtype=object)
    if a.ndim == 0:
        if s is None:
            raise ValueError("scalar coefficient needs an explicit size")
        a = np.eye(s, dtype=object) * a
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = Fraction(v)
    return out


class MatSeries:
    """Truncated formal power series with ``s x s`` rational matrix coefficients."""

    __slots__ = ("size", "truncation", "coeffs")

    def __init__(self, coeffs: Sequence, truncation: int, size: int | None = None):
        if truncation < 0:
            raise ValueError("truncation must be nonnegative")
        mats = [_frac_matrix(c, size) for c in coeffs[: truncation + 1]]
        if size is None:
            if not mats:
                raise ValueError("size is required for an empty coefficient list")
            size = mats[0].shape[0]
        zero = _frac_matrix(np.zeros((size, size), dtype=object))
        while len(mats) < truncation + 1:
            mats.append(zero.copy())
        for m in mats:
            if m.shape != (size, size):
                raise ValueError(f"coefficient of shape {m.shape}, expected {(size, size)}")
        self.size = size
        self.truncation = truncation
        self.coeffs = mats

    @classmethod
    def identity(cls, size: int, truncation: int) -> "MatSeries":
        return cls([np.eye(size, dtype=object)], truncation, size)

    @classmethod
    def scalar(cls, coeffs: Sequence, truncation: int) -> "MatSeries":
        return cls([[[c]] for c in coeffs], truncation, 1)

    def __getitem__(self, n: int) -> np.ndarray:
        if not 0 <= n <= self.truncation:
            raise IndexError(f"coefficient {n} is beyond truncation {self.truncation}")
        return self.coeffs[n]

    def _check(self, other: "MatSeries"):
        if self.size != other.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")

    def __add__(self, other: "MatSeries") -> "MatSeries":
        self._check(other)
        n = min(self.truncation, other.truncation)
        return MatSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n, self.size)

    def __neg__(self) -> "MatSeries":
        return MatSeries([-c for c in self.coeffs], self.truncation, self.size)

    def __sub__(self, other: "MatSeries") -> "MatSeries":
        return self + (-other)

    def __mul__(self, other: "MatSeries") -> "MatSeries":
        return series_multiply(self, other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatSeries)
            and self.size == other.size
            and self.truncation == other.truncation
            and all(np.array_equal(a, b) for a, b in zip(self.coeffs, other.coeffs))
        )

    def truncate(self, n: int) -> "MatSeries":
        return MatSeries(self.coeffs[: n + 1], min(n, self.truncation), self.size)

    def entry(self, i: int, j: int) -> list[Fraction]:
        return [c[i, j] for c in self.coeffs]

    def to_json(self) -> list:
        """Nested arrays of exact rational strings: ``[degree][row][col]``."""
        return [[[format_rational(v) for v in row] for row in c] for c in self.coeffs]

    def __repr__(self) -> str:
        if self.size == 1:
            return f"MatSeries({[format_rational(c[0, 0]) for c in self.coeffs]} + O(t^{self.truncation + 1}))"
        return f"MatSeries(size={self.size}, truncation={self.truncation})"


def series_multiply(f: MatSeries, g: MatSeries) -> MatSeries:
    """Cauchy product, truncated at the smaller truncation."""
    f._check(g)
    n = min(f.truncation, g.truncation)
    out = []
    for k in range(n + 1):
        acc = np.zeros((f.size, f.size), dtype=object) * Fraction(0)
        for i in range(k + 1):
            acc = acc + f.coeffs[i].dot(g.coeffs[k - i])
        out.append(acc)
    return MatSeries(out, n, f.size)


def series_invert(f: MatSeries) -> MatSeries:
    """Two-sided inverse via ``g_n = -f_0^{-1} sum_{i=1..n} f_i g_{n-i}``."""
    try:
        inv0 = np.array(fraction_inverse(f.coeffs[0].tolist()), dtype=object)
    except ZeroDivisionError:
        raise ValueError("constant term is singular") from None
    g = [inv0]
    for n in range(1, f.truncation + 1):
        acc = np.zeros((f.size, f.size), dtype=object) * Fraction(0)
        for i in range(1, n + 1):
            acc = acc + f.coeffs[i].dot(g[n - i])
        g.append(-inv0.dot(acc))
    return MatSeries(g, f.truncation, f.size)


def cy_denominator(q: Quiver, d: int, N: int) -> MatSeries:
    """``1 - M t + M^T t^(d-1) - t^d`` as a series truncated at ``N``."""
    if d < 3:
        raise ValueError("superpotential degree must be at least 3")
    s = q.vertex_count
    m = incidence_matrix(q).astype(object)
    coeffs = [np.zeros((s, s), dtype=object) for _ in range(max(N, d) + 1)]
    coeffs[0] = coeffs[0] + np.eye(s, dtype=object)
    coeffs[1] = coeffs[1] - m
    coeffs[d - 1] = coeffs[d - 1] + m.T
    coeffs[d] = coeffs[d] - np.eye(s, dtype=object)
    return MatSeries(coeffs, N, s)


def expected_cy_series(q: Quiver, d: int, N: int) -> MatSeries:
    return series_invert(cy_denominator(q, d, N))


def _poly_series(q: Quiver, N: int, terms: dict[int, np.ndarray]) -> MatSeries:
    s = q.vertex_count
    coeffs = [np.zeros((s, s), dtype=object) for _ in range(N + 1)]
    for k, m in terms.items():
        if k <= N:
            coeffs[k] = coeffs[k] + m
    return MatSeries(coeffs, N, s)


def inequality_series(q: Quiver, d: int, N: int) -> dict[str, MatSeries]:
    """The three series that must be entrywise nonnegative for a good superpotential."""
    h = expected_cy_series(q, d, N)
    m = incidence_matrix(q).astype(object)
    one = np.eye(q.vertex_count, dtype=object)
    i2 = _poly_series(q, N, {0: m.T, 1: -one}) * h
    # image of the degree-one term of the resolution of S: the t^(d-1) term
    # enters with a plus sign, otherwise C<x,y,z> commutative would fail
    i3 = _poly_series(q, N, {0: m, d - 2: -m.T, d - 1: one}) * h
    return {"I1": h, "I2": i2, "I3": i3}


@dataclass(frozen=True)
class Violation:
    degree: int
    entry: tuple[int, int]
    value: Fraction

    def to_json(self) -> dict:
        return {"degree": self.degree, "entry": list(self.entry), "value": format_rational(self.value)}


def first_negative(f: MatSeries) -> Violation | None:
    for k, c in enumerate(f.coeffs):
        for (i, j), v in np.ndenumerate(c):
            if v < 0:
                return Violation(k, (i, j), v)
    return None


@dataclass
class InequalityReport:
    d: int
    N: int
    failures: dict[str, Violation | None]
    series: dict[str, MatSeries]

    @property
    def passed(self) -> bool:
        return all(v is None for v in self.failures.values())

    def first_failure(self) -> tuple[str, Violation] | None:
        """The violated inequality with the lowest degree (ties broken I1, I2, I3)."""
        hits = [(v.degree, name, v) for name, v in self.failures.items() if v is not None]
        if not hits:
            return None
        _, name, v = min(hits, key=lambda t: (t[0], t[1]))
        return name, v

    def to_json(self) -> dict:
        return {name: ("pass" if v is None else v.to_json()) for name, v in self.failures.items()}


def check_inequalities(q: Quiver, d: int, N: int) -> InequalityReport:
    """Entrywise nonnegativity of ``H``, ``(M^T - t) H`` and ``(M - M^T t^(d-2) + t^(d-1)) H``.

    Nonnegative rather than strictly positive: the coefficients count
    dimensions of terms in a resolution, so zero is allowed.
    """
    series = inequality_series(q, d, N)
    return InequalityReport(d, N, {k: first_negative(v) for k, v in series.items()}, series)


@dataclass(frozen=True)
class Mismatch:
    degree: int
    entry: tuple[int, int]
    actual: Fraction
    expected: Fraction

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "entry": list(self.entry),
            "actual": format_rational(self.actual),
            "expected": format_rational(self.expected),
        }


def compare_series(actual: MatSeries, expected: MatSeries) -> Mismatch | None:
    """First differing coefficient up to the common truncation, or ``None``."""
    actual._check(expected)
    n = min(actual.truncation, expected.truncation)
    for k in range(n + 1):
        a, e = actual.coeffs[k], expected.coeffs[k]
        for (i, j), v in np.ndenumerate(a):
            if v != e[i, j]:
                return Mismatch(k, (i, j), v, e[i, j])
    return None
