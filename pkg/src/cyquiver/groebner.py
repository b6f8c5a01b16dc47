"""Noncommutative Groebner bases in path algebras, truncated by degree.

All relations are homogeneous and vertex-bihomogeneous (every term has the
same head and tail), so completion can run degree by degree: at degree ``D``
the only new S-polynomials come from overlaps of total length ``D`` between
relations of lower degree.  After stage ``N`` the system is a Groebner basis
for every degree ``<= N``; this bound is stored as ``certified_degree`` and
checked by every query that relies on it.

Monomials are deglex ordered with ``arrow 0`` greatest; see
:func:`cyquiver.pathalg.deglex_key`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .automaton import FactorAutomaton
from .pathalg import Path, PathPoly, Word, as_fraction, deglex_key, path
from .quiver import Quiver, incidence_matrix

Poly = dict[Word, Fraction]


class CertificationError(ValueError):
    """A query needs a degree the system has not been completed to."""


class ResourceCapExceeded(RuntimeError):
    pass


# ordering -------------------------------------------------------------------


def deglex_compare(p: Path | Word, q: Path | Word) -> int:
    """-1, 0 or 1 as ``p`` is smaller than, equal to or greater than ``q``."""
    wp = p.word if isinstance(p, Path) else tuple(p)
    wq = q.word if isinstance(q, Path) else tuple(q)
    if not wp or not wq:
        raise ValueError("deglex compares nontrivial paths only")
    kp, kq = deglex_key(wp), deglex_key(wq)
    return (kp > kq) - (kp < kq)


def leading_word(f: Mapping[Word, Fraction]) -> Word:
    return max(f, key=deglex_key)


def leading_term(f: PathPoly) -> tuple[Path, Fraction]:
    if not f:
        raise ValueError("the zero polynomial has no leading term")
    p = max(f.terms, key=lambda p: (deglex_key(p.word), -p.head))
    return p, f.terms[p]


def _monic(f: Poly) -> Poly:
    lc = f[leading_word(f)]
    return {w: c / lc for w, c in f.items()}


def _add_into(acc: Poly, f: Mapping[Word, Fraction], scale: Fraction):
    for w, c in f.items():
        v = acc.get(w, 0) + scale * c
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)


def _as_poly(q: Quiver, f) -> Poly:
    if isinstance(f, PathPoly):
        if f.quiver != q:
            raise ValueError("relation lives over a different quiver")
        return f.word_terms()
    return {tuple(w): as_fraction(c) for w, c in f.items() if c}


def _check_relation(q: Quiver, f: Poly):
    if not f:
        return
    degs = {len(w) for w in f}
    if len(degs) != 1:
        raise ValueError("relations must be homogeneous")
    if 0 in degs:
        raise ValueError("relations must lie in the arrow ideal")
    ends = set()
    for w in f:
        if not q.is_path(w):
            raise ValueError(f"{q.format_word(w)} is not a path")
        ends.add((q.word_head(w), q.word_tail(w)))
    if len(ends) != 1:
        raise ValueError("every relation must sit inside a single i·CQ·j")


# rewrite systems --------------------------------------------------------------


class RewriteSystem:
    """A set of monic relations with pairwise distinct leading words.

    ``certified_degree`` is ``None`` for a raw system and the completion bound
    ``N`` after :func:`complete`.  A completed system is not mutated again.
    """

    def __init__(self, quiver: Quiver):
        self.quiver = quiver
        self.relations: list[Poly] = []
        self.lts: list[Word] = []
        self.lt_index: dict[Word, int] = {}
        self.certified_degree: int | None = None
        self._automaton: FactorAutomaton | None = None
        self._memo: dict[int, dict[Word, Poly]] = {}

    @classmethod
    def from_relations(cls, q: Quiver, relations: Iterable) -> "RewriteSystem":
        """Interreduce homogeneous relations degree by degree (no S-polynomials)."""
        rs = cls(q)
        by_degree: dict[int, list[Poly]] = {}
        for f in relations:
            f = _as_poly(q, f)
            _check_relation(q, f)
            if f:
                by_degree.setdefault(len(next(iter(f))), []).append(f)
        for D in sorted(by_degree):
            rs._absorb_degree(D, by_degree[D])
        return rs

    def copy(self) -> "RewriteSystem":
        out = RewriteSystem(self.quiver)
        for f in self.relations:
            out._append(dict(f))
        out.certified_degree = self.certified_degree
        return out

    def __len__(self) -> int:
        return len(self.relations)

    @property
    def max_degree(self) -> int:
        return max((len(w) for w in self.lts), default=0)

    @property
    def automaton(self) -> FactorAutomaton:
        if self._automaton is None:
            self._automaton = FactorAutomaton(self.lts)
        return self._automaton

    def _append(self, f: Poly):
        lt = leading_word(f)
        if lt in self.lt_index:
            raise ValueError("leading terms must be distinct")
        self.lt_index[lt] = len(self.relations)
        self.relations.append(f)
        self.lts.append(lt)
        self._automaton = None
        for n in [n for n in self._memo if n >= len(lt)]:
            del self._memo[n]

    def _absorb_degree(self, D: int, candidates: Sequence[Poly]):
        """Echelonise degree-``D`` candidates modulo the current system and append them."""
        pivots: dict[Word, Poly] = {}
        order: list[Word] = []
        for cand in candidates:
            v = self.reduce(cand)
            while v:
                m = leading_word(v)
                piv = pivots.get(m)
                if piv is None:
                    pivots[m] = _monic(v)
                    order.append(m)
                    break
                _add_into(v, piv, -v[m])
        for m in order:
            self._append(pivots[m])

    # reduction ------------------------------------------------------------

    def reduce_word(self, word: Word) -> Poly:
        """Normal form of a single word, memoised per length.

        Always rewrites the first factor found (earliest end position), which
        realises the greatest-reducible-monomial-first strategy on sums.
        """
        memo = self._memo.setdefault(len(word), {})
        hit = memo.get(word)
        if hit is not None:
            return hit
        auto = self.automaton
        stack = [word]
        while stack:
            w = stack[-1]
            if w in memo:
                stack.pop()
                continue
            occ = auto.find(w)
            if occ is None:
                memo[w] = {w: Fraction(1)}
                stack.pop()
                continue
            start, idx = occ
            lt = self.lts[idx]
            pre, suf = w[:start], w[start + len(lt) :]
            deps = [(pre + m + suf, c) for m, c in self.relations[idx].items() if m != lt]
            missing = [u for u, _ in deps if u not in memo]
            if missing:
                stack.extend(missing)
                continue
            acc: Poly = {}
            for u, c in deps:
                _add_into(acc, memo[u], -c)
            memo[w] = acc
            stack.pop()
        return memo[word]

    def reduce(self, f: Mapping[Word, Fraction]) -> Poly:
        acc: Poly = {}
        for w, c in f.items():
            if not w:
                _add_into(acc, {w: Fraction(1)}, c)
            else:
                _add_into(acc, self.reduce_word(w), c)
        return acc

    def reduce_randomly(self, f: Mapping[Word, Fraction], rng: random.Random) -> Poly:
        """Reduce with a random reducible monomial, occurrence and relation at each step.

        Used to probe confluence; no memoisation.
        """
        auto = self.automaton
        f = dict(f)
        while True:
            reducible = [w for w in f if auto.find(w) is not None]
            if not reducible:
                return f
            w = rng.choice(sorted(reducible))
            start, idx = rng.choice(auto.find_all(w))
            lt = self.lts[idx]
            c = f[w]
            pre, suf = w[:start], w[start + len(lt) :]
            _add_into(f, {pre + m + suf: v for m, v in self.relations[idx].items()}, -c)

    def is_standard(self, word: Word) -> bool:
        return self.automaton.find(word) is None

    # presentation ----------------------------------------------------------

    def relation_polys(self) -> list[PathPoly]:
        return [PathPoly.from_words(self.quiver, f) for f in self.relations]

    def to_dict(self) -> dict:
        from .pathalg import format_rational

        q = self.quiver
        return {
            "certified_degree": self.certified_degree,
            "relations": [
                {
                    "leading_term": q.format_word(lt),
                    "terms": [
                        {"coeff": format_rational(c), "path": q.format_word(w)}
                        for w, c in sorted(f.items(), key=lambda t: deglex_key(t[0]), reverse=True)
                    ],
                }
                for f, lt in zip(self.relations, self.lts)
            ],
        }


# elementary operations -------------------------------------------------------


def reduce_once(f: PathPoly, g: PathPoly) -> PathPoly:
    """One elementary reduction: cancel ``lt(f)`` against a two-sided multiple of ``g``.

    Returns ``f`` unchanged when ``lt(g)`` is not a factor of ``lt(f)``.
    """
    if not f or not g:
        return f
    q = f.quiver
    lt_f, cf = leading_term(f)
    lt_g, cg = leading_term(g)
    w, u = lt_f.word, lt_g.word
    for start in range(len(w) - len(u) + 1):
        if w[start : start + len(u)] == u:
            pre, suf = w[:start], w[start + len(u) :]
            zeta = cf / cg
            out = dict(f.terms)
            for p, c in g.terms.items():
                key = Path(lt_f.head, lt_f.tail, pre + p.word + suf) if (pre or suf) else p
                out[key] = out.get(key, Fraction(0)) - zeta * c
            return PathPoly(q, out)
    return f


def normal_form(f: PathPoly, rs: RewriteSystem) -> PathPoly:
    """Normal form of ``f`` in a system completed to at least ``deg f``."""
    if f.quiver != rs.quiver:
        raise ValueError("quiver mismatch")
    top = max(f.degrees(), default=0)
    if rs.certified_degree is None or top > rs.certified_degree:
        raise CertificationError(f"degree {top} exceeds certified degree {rs.certified_degree}")
    trivial = {p: c for p, c in f.terms.items() if p.is_trivial}
    reduced = rs.reduce({p.word: c for p, c in f.terms.items() if not p.is_trivial})
    out = dict(trivial)
    out.update({path(rs.quiver, w): c for w, c in reduced.items()})
    return PathPoly(rs.quiver, out)


@dataclass(frozen=True)
class Ambiguity:
    """An overlap ``(a, b, c)`` with ``a b = lt(g1)`` and ``b c = lt(g2)``."""

    a: Word
    b: Word
    c: Word
    g1: int
    g2: int

    @property
    def word(self) -> Word:
        return self.a + self.b + self.c

    @property
    def degree(self) -> int:
        return len(self.a) + len(self.b) + len(self.c)

    def format(self, q: Quiver) -> str:
        return f"({q.format_word(self.a)}, {q.format_word(self.b)}, {q.format_word(self.c)})"


def _prefix_index(lts: Sequence[Word]) -> dict[Word, list[int]]:
    index: dict[Word, list[int]] = {}
    for i, lt in enumerate(lts):
        for L in range(1, len(lt)):
            index.setdefault(lt[:L], []).append(i)
    return index


def _overlaps(lts: Sequence[Word], degree: int | None = None) -> list[Ambiguity]:
    index = _prefix_index(lts)
    out = []
    for i, u in enumerate(lts):
        for L in range(1, len(u)):
            for j in index.get(u[len(u) - L :], ()):
                v = lts[j]
                if degree is not None and len(u) + len(v) - L != degree:
                    continue
                out.append(Ambiguity(u[: len(u) - L], u[len(u) - L :], v[L:], i, j))
    out.sort(key=lambda m: (m.degree, deglex_key(lts[m.g1]), deglex_key(lts[m.g2]), len(m.b)), reverse=False)
    return out


def find_ambiguities(rs: RewriteSystem) -> list[Ambiguity]:
    """All overlap ambiguities (self-overlaps included), by ascending degree."""
    return _overlaps(rs.lts)


def s_polynomial(amb: Ambiguity, rs: RewriteSystem) -> Poly:
    """``g1 c - a g2``, whose leading words cancel."""
    out: Poly = {}
    _add_into(out, {w + amb.c: v for w, v in rs.relations[amb.g1].items()}, Fraction(1))
    _add_into(out, {amb.a + w: v for w, v in rs.relations[amb.g2].items()}, Fraction(-1))
    return out


def resolve_ambiguity(amb: Ambiguity, rs: RewriteSystem, degree_cap: int | None = None) -> tuple[bool, PathPoly]:
    """Reduce the S-polynomial of ``amb`` by ``rs``; resolvable iff the residue is 0."""
    if degree_cap is not None and amb.degree > degree_cap:
        raise ValueError(f"ambiguity degree {amb.degree} exceeds cap {degree_cap}")
    residue = rs.reduce(s_polynomial(amb, rs))
    return not residue, PathPoly.from_words(rs.quiver, residue)


def is_diamond_complete(rs: RewriteSystem) -> bool:
    return all(resolve_ambiguity(a, rs)[0] for a in find_ambiguities(rs))


def complete(rs: RewriteSystem, N: int, max_relations: int = 200_000) -> RewriteSystem:
    """Buchberger-style completion, degree by degree, up to ``N``.

    Returns a new system certified to ``N``: every ambiguity of degree
    ``<= N`` is resolvable and all normal forms in degrees ``<= N`` are exact.
    """
    if rs.max_degree > N:
        raise ValueError(f"N={N} is below the relation degree {rs.max_degree}")
    if rs.certified_degree is not None and rs.certified_degree >= N:
        return rs
    by_degree: dict[int, list[Poly]] = {}
    for f in rs.relations:
        by_degree.setdefault(len(next(iter(f))), []).append(f)
    out = RewriteSystem(rs.quiver)
    for D in range(1, N + 1):
        cands = list(by_degree.get(D, ()))
        cands.extend(s_polynomial(amb, out) for amb in _overlaps(out.lts, D))
        if cands:
            out._absorb_degree(D, cands)
        if len(out) > max_relations:
            raise ResourceCapExceeded(f"more than {max_relations} relations by degree {D}")
    out.certified_degree = N
    return out


# counting -----------------------------------------------------------------------


def _require(rs: RewriteSystem, n: int):
    if rs.certified_degree is None or n > rs.certified_degree:
        raise CertificationError(f"degree {n} exceeds certified degree {rs.certified_degree}")


def standard_monomial_counts(rs: RewriteSystem, N: int) -> list[np.ndarray]:
    """``[h_0, ..., h_N]`` where ``(h_n)[v, w]`` counts standard paths of length
    ``n`` with head ``v`` and tail ``w``.

    Dynamic programming over (automaton state, current tail) per head vertex.
    """
    _require(rs, N)
    q = rs.quiver
    nv = q.vertex_count
    auto = rs.automaton
    into = [q.arrows_into(v) for v in range(nv)]
    out = [np.eye(nv, dtype=object) * 1]
    layers = [{(0, v): 1} for v in range(nv)]
    for _ in range(N):
        h = np.zeros((nv, nv), dtype=object)
        for v in range(nv):
            nxt: dict[tuple[int, int], int] = {}
            for (s, cur), cnt in layers[v].items():
                for a in into[cur]:
                    t = auto.step(s, a)
                    if auto.match[t] != -1:
                        continue
                    key = (t, q.tail(a))
                    nxt[key] = nxt.get(key, 0) + cnt
            layers[v] = nxt
            for (_, w), cnt in nxt.items():
                h[v, w] += cnt
        out.append(h)
    return out


def standard_monomial_count(rs: RewriteSystem, n: int) -> np.ndarray:
    return standard_monomial_counts(rs, n)[n]


def standard_words(rs: RewriteSystem, N: int) -> list[list[Word]]:
    """Nontrivial standard words of each length ``1..N`` (index 0 is empty), deglex-descending."""
    _require(rs, N)
    q = rs.quiver
    auto = rs.automaton
    layers: list[list[Word]] = [[]]
    frontier = [((a,), auto.step(0, a)) for a in range(q.arrow_count)]
    frontier = [(w, s) for w, s in frontier if auto.match[s] == -1]
    for n in range(1, N + 1):
        layers.append(sorted((w for w, _ in frontier), key=deglex_key, reverse=True))
        if n == N:
            break
        nxt = []
        for w, s in frontier:
            for a in q.arrows_into(q.tail(w[-1])):
                t = auto.step(s, a)
                if auto.match[t] == -1:
                    nxt.append((w + (a,), t))
        frontier = nxt
    return layers


def hilbert_recursion_check(rs: RewriteSystem, d: int, N: int) -> bool:
    """Check ``h_k = h_{k-1} M - h_{k-d+1} M^T + h_{k-d}`` for ``1 <= k <= N``."""
    q = rs.quiver
    m = incidence_matrix(q).astype(object)
    hs = standard_monomial_counts(rs, N)
    zero = np.zeros_like(m)

    def h(k):
        return hs[k] if k >= 0 else zero

    for k in range(1, N + 1):
        rhs = h(k - 1).dot(m) - h(k - d + 1).dot(m.T) + h(k - d)
        if not np.array_equal(hs[k], rhs):
            return False
    return True
