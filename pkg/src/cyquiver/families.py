"""Explicit superpotential families that satisfy the leading-term criterion.

Each family is described by a :class:`FamilySpec` and built into a quiver
whose arrow list is already in the intended order (first arrow greatest) and
a :class:`~cyquiver.pathalg.CyclicPoly`.  Relations and leading terms are
always recomputed from ``W``; :func:`expected_leading_terms` returns the
published patterns only so they can be cross-checked.

Families:

``one_vertex_deg3``
    ``k >= 3`` loops, ``W = X1 X2 X3 + X1 X3 X2 + sum_{j>3} X1 Xj^2``.
``one_vertex_general``
    ``k >= 2`` loops, degree ``d``, ``W = sum_{l>=2} X1^(d-2) Xl^2``.
``Q1``
    two vertices, ``a1, a2: 0 -> 1`` and ``a3, a4: 1 -> 0``, even ``d >= 4``,
    ``W = a1 a3 (a2 a4)^(d/2-1) + a3 a1 (a4 a2)^(d/2-1)``.
``Q2``
    two vertices with loops ``b1`` at 0 and ``b2`` at 1, ``b3: 1 -> 0`` and
    ``b4: 0 -> 1``, ``d >= 4``, ``W = b1^(d-2) b3 b4 + b2^(d-2) b4 b3``.
``cyclic``
    vertices ``0..k-1`` with ``p[v]`` arrows ``v -> v+1``; ``d = ell * k``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .groebner import leading_word
from .pathalg import CyclicPoly, Word, all_derivatives
from .quiver import Quiver

FAMILIES = ("one_vertex_deg3", "one_vertex_general", "Q1", "Q2", "cyclic")


class FamilyError(ValueError):
    """Parameters outside the range where the family is defined."""


class LeadingTermMismatch(UserWarning):
    """A recomputed leading term differs from the published pattern."""


@dataclass(frozen=True)
class FamilySpec:
    family: str
    k: int | None = None
    d: int | None = None
    p: tuple[int, ...] | None = None
    ell: int | None = None

    def __post_init__(self):
        if self.p is not None:
            object.__setattr__(self, "p", tuple(self.p))
        validate(self)

    @property
    def degree(self) -> int:
        if self.family == "one_vertex_deg3":
            return 3
        if self.family == "cyclic":
            return self.ell * len(self.p)
        return self.d

    def label(self) -> str:
        if self.family == "one_vertex_deg3":
            return f"one_vertex_deg3(k={self.k})"
        if self.family == "one_vertex_general":
            return f"one_vertex_general(k={self.k}, d={self.d})"
        if self.family in ("Q1", "Q2"):
            return f"{self.family}(d={self.d})"
        return f"cyclic(p={','.join(map(str, self.p))}, ell={self.ell})"


def validate(spec: FamilySpec):
    f = spec.family
    if f not in FAMILIES:
        raise FamilyError(f"unknown family {f!r}; expected one of {', '.join(FAMILIES)}")
    if f == "one_vertex_deg3":
        if spec.k is None or spec.k < 3:
            raise FamilyError("one_vertex_deg3 needs k >= 3 loops (the cubic terms use X1, X2, X3)")
    elif f == "one_vertex_general":
        if spec.k is None or spec.k < 2 or spec.d is None or spec.d < 3:
            raise FamilyError("one_vertex_general needs k >= 2 loops and degree d >= 3")
        if (spec.k, spec.d) == (2, 3):
            raise FamilyError("(k, d) = (2, 3) has no good superpotentials: (M^T - t)H has a negative coefficient")
    elif f == "Q1":
        if spec.d is None or spec.d < 4:
            raise FamilyError("Q1 needs degree d >= 4")
        if spec.d % 2:
            raise FamilyError("Q1 needs even d: every cycle has even length")
    elif f == "Q2":
        if spec.d is None or spec.d < 4:
            raise FamilyError("Q2 needs degree d >= 4")
    else:
        if not spec.p or len(spec.p) < 2:
            raise FamilyError("cyclic needs at least two vertices")
        if any(n < 2 for n in spec.p):
            raise FamilyError("cyclic needs at least two arrows between consecutive vertices")
        if spec.ell is None or spec.ell < 2:
            raise FamilyError("cyclic needs d = ell * k with ell >= 2; ell = 1 is outside the construction")


def _loops(k: int) -> Quiver:
    return Quiver.from_edges(1, [(f"X{i}", 0, 0) for i in range(1, k + 1)])


def _add(terms: dict[Word, Fraction], word: list[int], c: int = 1):
    key = tuple(word)
    terms[key] = terms.get(key, Fraction(0)) + c


def cyclic_quiver(p: tuple[int, ...]) -> Quiver:
    """Arrows ``v -> v+1 (mod k)``, ``p[v]`` of them.

    Arrows into vertex ``v`` are named ``a{v}``, ``b{v}``, then ``c{v}_{j}``.
    The order puts every ``a`` above every ``b`` above everything else.
    """
    k = len(p)
    tiers: list[list[tuple[str, int, int]]] = [[], [], []]
    for v in range(k):
        src = (v - 1) % k
        for j in range(p[src]):
            name = "a" if j == 0 else "b" if j == 1 else "c"
            label = f"{name}{v}" if j < 2 else f"c{v}_{j - 1}"
            tiers[min(j, 2)].append((label, src, v))
    return Quiver.from_edges(k, tiers[0] + tiers[1] + tiers[2])


def build(spec: FamilySpec) -> tuple[Quiver, CyclicPoly, tuple[str, ...]]:
    """Quiver, superpotential and arrow order (greatest first) of an instance."""
    f = spec.family
    terms: dict[Word, Fraction] = {}
    if f == "one_vertex_deg3":
        q = _loops(spec.k)
        _add(terms, [0, 1, 2])
        _add(terms, [0, 2, 1])
        for j in range(3, spec.k):
            _add(terms, [0, j, j])
    elif f == "one_vertex_general":
        q = _loops(spec.k)
        for j in range(1, spec.k):
            _add(terms, [0] * (spec.d - 2) + [j, j])
    elif f == "Q1":
        q = Quiver.from_edges(2, [("a1", 0, 1), ("a2", 0, 1), ("a3", 1, 0), ("a4", 1, 0)])
        m = spec.d // 2 - 1
        _add(terms, [0, 2] + [1, 3] * m)
        _add(terms, [2, 0] + [3, 1] * m)
    elif f == "Q2":
        q = Quiver.from_edges(2, [("b1", 0, 0), ("b2", 1, 1), ("b3", 1, 0), ("b4", 0, 1)])
        _add(terms, [0] * (spec.d - 2) + [2, 3])
        _add(terms, [1] * (spec.d - 2) + [3, 2])
    else:
        q = cyclic_quiver(spec.p)
        k, ell = len(spec.p), spec.ell
        a = [q.index(f"a{v}") for v in range(k)]
        b = [q.index(f"b{v}") for v in range(k)]
        for i in range(k):
            _add(terms, [a[i], a[(i - 1) % k]] + [b[(i - j) % k] for j in range(2, ell * k)])
        for c in range(q.arrow_count):
            if c in a or c in b:
                continue
            h = q.head(c)
            tail_run = [b[(h - j) % k] for j in range(2, k)]
            _add(terms, [c, a[(h - 1) % k]] + tail_run + ([c, b[(h - 1) % k]] + tail_run) * (ell - 1))
    return q, CyclicPoly(q, terms, spec.degree), q.names


# published leading-term patterns -----------------------------------------------------


def expected_leading_terms(spec: FamilySpec) -> list[tuple[str, str]]:
    """The published ``lt(∂_a W)`` patterns, instantiated, as ``(arrow, word)`` pairs.

    These are transcriptions, typos included; compare them with
    :func:`recomputed_leading_terms` through :func:`leading_term_discrepancies`.
    """
    f, d = spec.family, spec.degree

    def w(*parts) -> str:
        return "*".join(x for part in parts for x in part)

    if f == "one_vertex_deg3":
        out = [("X1", "X2*X3"), ("X2", "X1*X3"), ("X3", "X1*X2")]
        return out + [(f"X{j}", f"X1*X{j}") for j in range(4, spec.k + 1)]
    if f == "one_vertex_general":
        out = [("X1", w(["X1"] * (d - 3), ["X2", "X2"]))]
        # published with exponent d - 1, which is one too many for a degree d - 1 relation
        return out + [(f"X{j}", w(["X1"] * (d - 1), [f"X{j}"])) for j in range(2, spec.k + 1)]
    if f == "Q1":
        m = d // 2
        return [
            ("a1", w(["a3"], ["a2", "a4"] * (m - 1))),
            ("a2", w(["a3", "a1", "a4"], ["a2", "a4"] * (m - 2))),
            ("a3", w(["a1"], ["a4", "a2"] * (m - 1))),
            ("a4", w(["a1", "a3", "a2"], ["a4", "a2"] * (m - 2))),
        ]
    if f == "Q2":
        return [
            ("b1", w(["b1"] * (d - 3), ["b3", "b4"])),
            ("b2", w(["b2"] * (d - 3), ["b4", "b3"])),
            ("b3", w(["b2"] * (d - 2), ["b4"])),
            ("b4", w(["b1"] * (d - 2), ["b3"])),
        ]
    k, ell = len(spec.p), spec.ell
    q = cyclic_quiver(spec.p)
    out = []
    for i in range(k):
        out.append((f"a{i}", w([f"a{(i - 1) % k}"], [f"b{(i - j) % k}" for j in range(2, ell * k)])))
    for i in range(k):
        out.append((f"b{i}", w([f"a{(i - 1) % k}", f"a{(i - 2) % k}"], [f"b{(i - j) % k}" for j in range(3, ell * k)])))
    for name in q.names:
        if name.startswith("c"):
            h = q.head(q.index(name))
            run = [f"b{(h - j) % k}" for j in range(2, k)]
            out.append((name, w([f"a{(h - 1) % k}"], run, ([name, f"b{(h - 1) % k}"] + run) * (ell - 1))))
    return out


def recomputed_leading_terms(spec: FamilySpec) -> list[tuple[str, str]]:
    q, w, _ = build(spec)
    return [(q.names[a], q.format_word(leading_word(f))) for a, f in enumerate(all_derivatives(w))]


def leading_term_discrepancies(spec: FamilySpec, warn: bool = True) -> list[dict]:
    """Arrows whose recomputed leading term differs from the published one."""
    published = dict(expected_leading_terms(spec))
    out = []
    for arrow, actual in recomputed_leading_terms(spec):
        claimed = published.get(arrow)
        if claimed != actual:
            out.append({"arrow": arrow, "published": claimed, "recomputed": actual})
    if out and warn:
        warnings.warn(f"{spec.label()}: {len(out)} leading term(s) differ from the published pattern", LeadingTermMismatch, stacklevel=2)
    return out


def test_matrix() -> list[FamilySpec]:
    """The fixed eleven-instance matrix used by the cross-method checks."""
    return [
        FamilySpec("one_vertex_deg3", k=3),
        FamilySpec("one_vertex_deg3", k=4),
        FamilySpec("one_vertex_general", k=2, d=4),
        FamilySpec("one_vertex_general", k=2, d=5),
        FamilySpec("one_vertex_general", k=3, d=4),
        FamilySpec("Q1", d=4),
        FamilySpec("Q1", d=6),
        FamilySpec("Q2", d=4),
        FamilySpec("Q2", d=5),
        FamilySpec("cyclic", p=(2, 2), ell=2),
        FamilySpec("cyclic", p=(2, 2, 2), ell=2),
    ]


test_matrix.__test__ = False  # keep pytest from collecting it
