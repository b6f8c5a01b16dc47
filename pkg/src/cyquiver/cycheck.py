"""Verdict engine: is a superpotential good, up to a degree bound?

Four routes, from cheapest to most expensive:

* :func:`structural_precheck` -- every vertex has two arrows in and out, every
  arrow occurs in ``W``.  Failure is definitive.
* :func:`hilbert_check` -- inequality screening of the expected series, then
  comparison against the standard-monomial counts.  Necessary only.
* :func:`condsup_check` -- the leading-term criterion.  Sufficient only, and
  unconditional when it applies.
* :func:`exactness_check` -- graded exactness of the bimodule complex
  ``P3 -> P2 -> P1 -> P0 -> A``, degree by degree.

Slices of the complex use bases of pairs ``(slot, x, y)`` of standard words.
The empty word stands for the trivial path at the vertex the slot implies.
Generator degrees are 0 for vertex slots of ``P0``, 1 for arrow slots of
``P1``, ``d - 1`` for relation slots of ``P2`` and ``d`` for ``P3``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .groebner import (
    CertificationError,
    RewriteSystem,
    _overlaps,
    complete,
    leading_word,
    resolve_ambiguity,
    standard_monomial_counts,
    standard_words,
)
from .hilbert import MatSeries, check_inequalities, compare_series
from .linalg import PRIMES, UnluckyPrime, rank_exact, rank_mod_p
from .pathalg import CyclicPoly, Word, all_derivatives, cyclic_embed_words, deglex_key, format_rational, necklaces
from .quiver import Quiver, degree_defects

GOOD, BAD, INCONCLUSIVE = "good", "bad", "inconclusive"
EXIT_CODES = {GOOD: 0, BAD: 1, INCONCLUSIVE: 2}

SparseRow = dict[int, Fraction]


def default_degree_bound(d: int) -> int:
    return max(2 * d + 2, 10)


class EmptySuperpotentialSpace(ValueError):
    """The quiver has no cycles of the requested degree."""


@dataclass
class Verdict:
    """Outcome of one method.

    ``certified_degree`` is ``None`` for an unconditional verdict (the
    leading-term criterion, or a structural failure that holds in all degrees).
    """

    method: str
    outcome: str
    certified_degree: int | None = None
    witness: dict | None = None
    details: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.outcome]

    @property
    def is_good(self) -> bool:
        return self.outcome == GOOD

    @property
    def is_bad(self) -> bool:
        return self.outcome == BAD

    def to_json(self) -> dict:
        out = {"method": self.method, "outcome": self.outcome, "N": self.certified_degree}
        if self.witness is not None:
            out["witness"] = self.witness
        out.update(self.details)
        out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out


def relations_of(w: CyclicPoly) -> list[dict[Word, Fraction]]:
    """``∂_a W`` for every arrow, in arrow order."""
    return all_derivatives(w)


def rewrite_system_for(w: CyclicPoly, N: int | None = None) -> RewriteSystem:
    """The relations ``∂_a W`` interreduced, and completed to ``N`` when given."""
    rs = RewriteSystem.from_relations(w.quiver, [f for f in relations_of(w) if f])
    if N is not None:
        rs = complete(rs, max(N, rs.max_degree))
    return rs


# structural -------------------------------------------------------------------


def structural_precheck(q: Quiver, w: CyclicPoly) -> Verdict:
    """Necessary conditions: degree at least two at each vertex both ways, and
    every arrow occurring in some cycle of ``W``."""
    t0 = time.perf_counter()
    defects = degree_defects(q)
    if defects:
        v, direction, count = defects[0]
        witness = {"condition": "vertex_degree", "vertex": v, "direction": direction, "count": count}
        return Verdict("structural", BAD, None, witness, timings={"structural": time.perf_counter() - t0})
    used = w.arrows_used()
    for a in range(q.arrow_count):
        if a not in used:
            witness = {"condition": "arrow_not_in_potential", "arrow": q.names[a]}
            return Verdict("structural", BAD, None, witness, timings={"structural": time.perf_counter() - t0})
    return Verdict("structural", INCONCLUSIVE, None, None, timings={"structural": time.perf_counter() - t0})


# leading-term criterion ----------------------------------------------------------


def _fail(clause: str, t0: float, **info) -> Verdict:
    return Verdict("condsup", INCONCLUSIVE, None, {"clause": clause, **info}, timings={"condsup": time.perf_counter() - t0})


def condsup_check(q: Quiver, w: CyclicPoly) -> Verdict:
    """The leading-term criterion for goodness in all degrees.

    Passes when the leading words of the ``∂_a W`` are distinct and
    factor-free, their overlaps are exactly one per vertex and each has the
    shape ``(a, lt(∂_a W) b^-1, b)``, and every vertex is the head of an arrow
    that no leading word ends in.  Failure only means the criterion does not
    apply, so it is reported as inconclusive.

    The last clause is stated with ``h(a) = v``: that is what the injectivity
    argument for the final map needs under the right-to-left path convention.
    """
    t0 = time.perf_counter()
    if degree_defects(q):
        v, direction, count = degree_defects(q)[0]
        return _fail("vertex_degree", t0, vertex=v, direction=direction, count=count)
    rels = relations_of(w)
    for a, f in enumerate(rels):
        if not f:
            return _fail("zero_relation", t0, arrow=q.names[a])
    lts = [leading_word(f) for f in rels]
    seen: dict[Word, int] = {}
    for a, lt in enumerate(lts):
        if lt in seen:
            return _fail("distinct_leading_terms", t0, arrows=[q.names[seen[lt]], q.names[a]], leading_term=q.format_word(lt))
        seen[lt] = a
    for a, u in enumerate(lts):
        for b, v in enumerate(lts):
            if a != b and len(u) < len(v) and any(v[i : i + len(u)] == u for i in range(len(v) - len(u) + 1)):
                return _fail("containment", t0, inner=q.format_word(u), outer=q.format_word(v))

    embedded = cyclic_embed_words(w)
    top_cycle: dict[int, Word] = {}
    for word in embedded:
        v = q.word_head(word)
        if v not in top_cycle or deglex_key(word) > deglex_key(top_cycle[v]):
            top_cycle[v] = word

    ambs = _overlaps(lts)
    per_vertex: dict[int, list] = {}
    for amb in ambs:
        # amb.a + amb.b = lt(∂_b W) and amb.b + amb.c = lt(∂_a W)
        a, b = amb.g2, amb.g1
        if amb.a != (a,) or amb.c != (b,):
            return _fail("ambiguity_shape", t0, ambiguity=amb.format(q))
        v = q.head(a)
        if (a,) + lts[a] != top_cycle.get(v):
            return _fail("ambiguity_cycle", t0, ambiguity=amb.format(q), vertex=v)
        per_vertex.setdefault(v, []).append(amb)
    for v in range(q.vertex_count):
        found = per_vertex.get(v, [])
        if len(found) != 1:
            return _fail("ambiguity_per_vertex", t0, vertex=v, count=len(found))

    endings = {lt[-1] for lt in lts}
    for v in range(q.vertex_count):
        if all(a in endings for a in q.arrows_into(v)):
            return _fail("free_ending_arrow", t0, vertex=v)

    rs = RewriteSystem.from_relations(q, rels)
    resolvable = [resolve_ambiguity(amb, rs)[0] for amb in ambs]
    details = {
        "leading_terms": {q.names[a]: q.format_word(lt) for a, lt in enumerate(lts)},
        "ambiguities": [{"ambiguity": amb.format(q), "resolvable": r} for amb, r in zip(ambs, resolvable)],
    }
    if not all(resolvable):
        # cannot happen when the clauses above hold; surfaced rather than trusted
        raise AssertionError("criterion holds but an ambiguity is unresolvable")
    return Verdict("condsup", GOOD, None, None, details, {"condsup": time.perf_counter() - t0})


# hilbert ----------------------------------------------------------------------------


def counts_series(rs: RewriteSystem, N: int) -> MatSeries:
    return MatSeries(standard_monomial_counts(rs, N), N, rs.quiver.vertex_count)


def hilbert_check(q: Quiver, w: CyclicPoly, N: int | None = None, rs: RewriteSystem | None = None) -> Verdict:
    """Compare the quotient's matrix Hilbert series with the expected one.

    The inequalities are screened first; a violation means no superpotential
    of this degree can be good, so no Groebner work is done.  A match is only
    inconclusive: the identity is necessary, not sufficient.
    """
    t0 = time.perf_counter()
    d = w.degree
    N = default_degree_bound(d) if N is None else N
    report = check_inequalities(q, d, N)
    first = report.first_failure()
    if first is not None:
        name, v = first
        witness = {"inequality": name, **v.to_json()}
        return Verdict("hilbert", BAD, N, witness, {"inequalities": report.to_json()}, {"hilbert": time.perf_counter() - t0})
    if rs is None or rs.certified_degree is None or rs.certified_degree < N:
        rs = rewrite_system_for(w, N)
    t1 = time.perf_counter()
    actual = counts_series(rs, N)
    expected = report.series["I1"]
    mismatch = compare_series(actual, expected)
    details = {"hilbert_actual": actual.to_json(), "hilbert_expected": expected.to_json()}
    timings = {"groebner": t1 - t0, "hilbert": time.perf_counter() - t1}
    if mismatch is not None:
        return Verdict("hilbert", BAD, N, mismatch.to_json(), details, timings)
    return Verdict("hilbert", INCONCLUSIVE, N, None, details, timings)


# the complex -----------------------------------------------------------------------------


Basis = list[tuple[int, Word, Word]]


@dataclass
class GradedComplexSlice:
    """Degree-``n`` part of ``P3 -> P2 -> P1 -> P0 -> A``.

    Each map is a list of sparse rows, one per basis element of the domain,
    keyed by codomain basis index.
    """

    degree: int
    bases: dict[str, list]
    D3: list[SparseRow]
    D2: list[SparseRow]
    D1: list[SparseRow]
    M: list[SparseRow]

    @property
    def dims(self) -> dict[str, int]:
        return {k: len(v) for k, v in self.bases.items()}

    def maps(self) -> list[tuple[str, list[SparseRow], str, str]]:
        return [("D3", self.D3, "P3", "P2"), ("D2", self.D2, "P2", "P1"), ("D1", self.D1, "P1", "P0"), ("M", self.M, "P0", "A")]

    def dense(self, name: str) -> np.ndarray:
        """The named map as a dense object matrix acting on column vectors."""
        for key, rows, src, dst in self.maps():
            if key == name:
                out = np.zeros((len(self.bases[dst]), len(self.bases[src])), dtype=object)
                out[:] = Fraction(0)
                for j, row in enumerate(rows):
                    for i, c in row.items():
                        out[i, j] = c
                return out
        raise KeyError(name)

    def chain_defects(self) -> list[str]:
        """Names of consecutive pairs whose composite is not exactly zero."""
        bad = []
        pairs = [("D3", self.D3, "D2", self.D2), ("D2", self.D2, "D1", self.D1), ("D1", self.D1, "M", self.M)]
        for n1, first, n2, second in pairs:
            for row in first:
                acc: dict[int, Fraction] = {}
                for k, c in row.items():
                    for j, e in second[k].items():
                        acc[j] = acc.get(j, Fraction(0)) + c * e
                if any(acc.values()):
                    bad.append(f"{n2}∘{n1}")
                    break
        return bad

    def euler_characteristic(self) -> int:
        d = self.dims
        return d["P0"] - d["P1"] + d["P2"] - d["P3"] - d["A"]


class ComplexBuilder:
    """Builds slices of the complex against one completed rewrite system."""

    def __init__(self, w: CyclicPoly, rs: RewriteSystem):
        if rs.certified_degree is None:
            raise CertificationError("rewrite system is not completed")
        self.w = w
        self.q = w.quiver
        self.d = w.degree
        self.rs = rs
        self.rels = relations_of(w)
        self._words: list[list[Word]] | None = None
        self._by_tail: dict[tuple[int, int], list[Word]] = {}
        self._by_head: dict[tuple[int, int], list[Word]] = {}

    def _index_words(self, n: int):
        if self._words is not None and len(self._words) > n:
            return
        self._words = standard_words(self.rs, n)
        self._by_tail.clear()
        self._by_head.clear()
        q = self.q
        for L, layer in enumerate(self._words):
            for word in layer:
                self._by_tail.setdefault((L, q.word_tail(word)), []).append(word)
                self._by_head.setdefault((L, q.word_head(word)), []).append(word)

    def words_with_tail(self, L: int, v: int) -> list[Word]:
        return [()] if L == 0 else self._by_tail.get((L, v), [])

    def words_with_head(self, L: int, v: int) -> list[Word]:
        return [()] if L == 0 else self._by_head.get((L, v), [])

    def nf(self, word: Word) -> dict[Word, Fraction]:
        if not word:
            return {(): Fraction(1)}
        return self.rs.reduce_word(word)

    def pair_basis(self, slots: Iterable[tuple[int, int, int]], total: int) -> Basis:
        """Pairs ``(slot, x, y)`` with ``x`` ending at ``x_tail`` and ``y``
        starting at ``y_head``, of total length ``total``."""
        out: Basis = []
        if total < 0:
            return out
        for slot, x_tail, y_head in slots:
            for lx in range(total, -1, -1):
                ys = self.words_with_head(total - lx, y_head)
                if not ys:
                    continue
                for x in self.words_with_tail(lx, x_tail):
                    for y in ys:
                        out.append((slot, x, y))
        return out

    def build(self, n: int) -> GradedComplexSlice:
        if self.rs.certified_degree < n:
            raise CertificationError(f"degree {n} exceeds certified degree {self.rs.certified_degree}")
        self._index_words(n)
        q, d = self.q, self.d
        V, E = range(q.vertex_count), range(q.arrow_count)
        P3 = self.pair_basis(((i, i, i) for i in V), n - d)
        P2 = self.pair_basis(((a, q.tail(a), q.head(a)) for a in E), n - d + 1)
        P1 = self.pair_basis(((b, q.head(b), q.tail(b)) for b in E), n - 1)
        P0 = self.pair_basis(((i, i, i) for i in V), n)
        if n == 0:
            A = [(i, i, ()) for i in V]
        else:
            A = [(q.word_head(word), q.word_tail(word), word) for word in self._words[n]]
        idx = {name: {key: k for k, key in enumerate(basis)} for name, basis in (("P2", P2), ("P1", P1), ("P0", P0))}
        a_idx = {key: k for k, key in enumerate(A)}

        def emit(row: SparseRow, table: dict, slot: int, xs: dict, ys: dict, c: Fraction):
            for x, cx in xs.items():
                for y, cy in ys.items():
                    k = table[(slot, x, y)]
                    v = row.get(k, Fraction(0)) + c * cx * cy
                    if v:
                        row[k] = v
                    else:
                        row.pop(k, None)

        one = Fraction(1)
        D3 = []
        for i, x, y in P3:
            row: SparseRow = {}
            for a in q.arrows_into(i):
                emit(row, idx["P2"], a, self.nf(x + (a,)), {y: one}, one)
            for a in q.arrows_out_of(i):
                emit(row, idx["P2"], a, {x: one}, self.nf((a,) + y), -one)
            D3.append(row)

        D2 = []
        for a, x, y in P2:
            row = {}
            for word, c in self.rels[a].items():
                for j, b in enumerate(word):
                    emit(row, idx["P1"], b, self.nf(x + word[:j]), self.nf(word[j + 1 :] + y), c)
            D2.append(row)

        D1 = []
        for b, x, y in P1:
            row = {}
            emit(row, idx["P0"], q.tail(b), self.nf(x + (b,)), {y: one}, one)
            emit(row, idx["P0"], q.head(b), {x: one}, self.nf((b,) + y), -one)
            D1.append(row)

        M = []
        for i, x, y in P0:
            row = {}
            if not x and not y:
                row[a_idx[(i, i, ())]] = one
            else:
                for u, c in self.nf(x + y).items():
                    row[a_idx[(q.word_head(u), q.word_tail(u), u)]] = c
            M.append(row)

        bases = {"P3": P3, "P2": P2, "P1": P1, "P0": P0, "A": A}
        return GradedComplexSlice(n, bases, D3, D2, D1, M)


def build_complex_slice(q: Quiver, w: CyclicPoly, rs: RewriteSystem, n: int) -> GradedComplexSlice:
    if w.quiver != q or rs.quiver != q:
        raise ValueError("quiver mismatch")
    return ComplexBuilder(w, rs).build(n)


# exactness ---------------------------------------------------------------------------------


def _ranks(s: GradedComplexSlice, rank) -> dict[str, int]:
    return {name: rank(rows) for name, rows, _, _ in s.maps()}


def exactness_defect(s: GradedComplexSlice, ranks: dict[str, int]) -> dict | None:
    """First position where homology is nonzero, walking from ``P3`` to ``A``."""
    dims = s.dims
    checks = [
        ("P3", dims["P3"] - ranks["D3"]),
        ("P2", dims["P2"] - ranks["D2"] - ranks["D3"]),
        ("P1", dims["P1"] - ranks["D1"] - ranks["D2"]),
        ("P0", dims["P0"] - ranks["M"] - ranks["D1"]),
        ("A", dims["A"] - ranks["M"]),
    ]
    for position, homology in checks:
        if homology:
            return {"degree": s.degree, "position": position, "homology_dim": homology}
    return None


def slice_is_exact(s: GradedComplexSlice) -> tuple[bool, dict[str, int], str]:
    """Decide exactness of one slice over Q.

    Ranks modulo a prime never exceed ranks over Q, and the chain property
    caps each rational rank, so a slice exact modulo p is exact over Q.  When
    every prime tried shows a defect the exact rational ranks decide.
    """
    for p in PRIMES[:2]:
        try:
            ranks = _ranks(s, lambda rows: rank_mod_p(rows, p))
        except UnluckyPrime:
            continue
        if exactness_defect(s, ranks) is None:
            return True, ranks, f"mod {p}"
    ranks = _ranks(s, rank_exact)
    return exactness_defect(s, ranks) is None, ranks, "exact"


def exactness_check(q: Quiver, w: CyclicPoly, N: int | None = None, rs: RewriteSystem | None = None) -> Verdict:
    """Graded exactness of the complex in every degree ``0..N``.

    Good means exact through degree ``N``; bad carries the first degree and
    position with nonzero homology.
    """
    t0 = time.perf_counter()
    d = w.degree
    if d < 3:
        raise ValueError("superpotential degree must be at least 3")
    N = default_degree_bound(d) if N is None else N
    if rs is None or rs.certified_degree is None or rs.certified_degree < N:
        rs = rewrite_system_for(w, N)
    t1 = time.perf_counter()
    builder = ComplexBuilder(w, rs)
    per_degree = []
    for n in range(N + 1):
        s = builder.build(n)
        exact, ranks, how = slice_is_exact(s)
        per_degree.append({"degree": n, "dims": s.dims, "ranks": ranks, "rank_method": how})
        if not exact:
            witness = exactness_defect(s, ranks)
            witness.update({"dims": s.dims, "ranks": ranks})
            timings = {"groebner": t1 - t0, "exactness": time.perf_counter() - t1}
            return Verdict("exactness", BAD, n, witness, {"slices": per_degree}, timings)
    timings = {"groebner": t1 - t0, "exactness": time.perf_counter() - t1}
    return Verdict("exactness", GOOD, N, None, {"slices": per_degree}, timings)


# orchestration -------------------------------------------------------------------------------

METHODS = ("structural", "condsup", "hilbert", "exactness", "all")


def check(q: Quiver, w: CyclicPoly, method: str = "all", N: int | None = None) -> Verdict:
    """Run one method, or the cheap-first pipeline for ``method="all"``.

    The pipeline stops at the first bad stage.  A good leading-term verdict
    is unconditional and is what gets reported, but exactness still runs as a
    consistency check; any disagreement is an internal error.
    """
    N = default_degree_bound(w.degree) if N is None else N
    if method == "structural":
        return structural_precheck(q, w)
    if method == "condsup":
        return condsup_check(q, w)
    if method == "hilbert":
        return hilbert_check(q, w, N)
    if method == "exactness":
        return exactness_check(q, w, N)
    if method != "all":
        raise ValueError(f"unknown method {method!r}")
    stages: list[Verdict] = []
    v = structural_precheck(q, w)
    stages.append(v)
    if not v.is_bad:
        v = hilbert_check(q, w, N)
        stages.append(v)
    if not v.is_bad:
        stages.append(condsup_check(q, w))
        ex = exactness_check(q, w, N)
        stages.append(ex)
        if stages[-2].is_good and not ex.is_good:
            raise AssertionError("leading-term criterion and exactness disagree")
        v = stages[-2] if stages[-2].is_good else ex
    final = Verdict(v.method, v.outcome, v.certified_degree, v.witness, dict(v.details))
    for s in stages:
        final.timings.update(s.timings)
    final.details["stages"] = [{"method": s.method, "outcome": s.outcome} for s in stages]
    hil = next((s for s in stages if s.method == "hilbert"), None)
    if hil is not None:
        for key in ("hilbert_actual", "hilbert_expected"):
            if key in hil.details:
                final.details[key] = hil.details[key]
    return final


# sampling --------------------------------------------------------------------------------------


def random_superpotential(q: Quiver, d: int, pool: Sequence[int], rng: random.Random) -> CyclicPoly:
    """Every degree-``d`` necklace with a coefficient drawn from ``pool``."""
    necks = necklaces(q, d)
    if not necks:
        raise EmptySuperpotentialSpace(f"no cycles of length {d} in this quiver")
    if any(c == 0 for c in pool):
        raise ValueError("coefficient pool must not contain zero")
    return CyclicPoly(q, {n: rng.choice(pool) for n in necks}, d)


def sample_superpotentials(
    q: Quiver,
    d: int,
    trials: int,
    pool: Sequence[int] = (-3, -2, -1, 1, 2, 3),
    N: int | None = None,
    seed: int = 0,
) -> dict:
    """Monte-Carlo probe: draw ``trials`` superpotentials and run exactness on each."""
    if d < 3:
        raise ValueError("superpotential degree must be at least 3")
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if not necklaces(q, d):
        lengths = _cycle_lengths(q, d + 1)
        even = bool(lengths) and all(L % 2 == 0 for L in lengths)
        why = "every cycle has even length" if even and d % 2 else f"no cycles of length {d}"
        raise EmptySuperpotentialSpace(f"degree-{d} superpotential space is empty: {why}")
    N = default_degree_bound(d) if N is None else N
    rng = random.Random(seed)
    counts = {GOOD: 0, BAD: 0, INCONCLUSIVE: 0}
    runs = []
    for t in range(trials):
        w = random_superpotential(q, d, pool, rng)
        v = exactness_check(q, w, N)
        counts[v.outcome] += 1
        entry = {"trial": t, "potential": str(w), "outcome": v.outcome}
        if v.witness is not None:
            entry["witness"] = v.witness
        runs.append(entry)
    return {
        "d": d,
        "N": N,
        "trials": trials,
        "seed": seed,
        "pool": [format_rational(Fraction(c)) for c in pool],
        "good_count": counts[GOOD],
        "bad_count": counts[BAD],
        "inconclusive_count": counts[INCONCLUSIVE],
        "runs": runs,
    }


def _cycle_lengths(q: Quiver, bound: int) -> set[int]:
    """Lengths up to ``bound`` that carry at least one cycle; used to explain an empty space."""
    return {L for L in range(1, bound + 1) if necklaces(q, L)}
