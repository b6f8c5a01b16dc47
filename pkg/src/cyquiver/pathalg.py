"""Exact arithmetic in the path algebra of a quiver over the rationals.

Three value types live here:

* :class:`PathPoly` -- finite rational combinations of paths,
* :class:`CyclicPoly` -- superpotentials, i.e. combinations of necklaces
  (cycles up to rotation) stored by their deglex-greatest rotation,
* :class:`TensorPoly` -- combinations of pairs of paths, the values of the
  second derivative.

Internally a nontrivial path is just its word, a tuple of arrow indices.
:class:`Path` adds the head and tail so that trivial paths (vertices) are
representable too.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping, NamedTuple

from .quiver import Quiver

Word = tuple[int, ...]


def as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def deglex_key(word: Word) -> tuple[int, tuple[int, ...]]:
    """Sort key realising deglex: longer words are greater, then the word whose
    first differing arrow is greater (smaller index) wins."""
    return (len(word), tuple(-a for a in word))


class Path(NamedTuple):
    head: int
    tail: int
    word: Word

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def is_trivial(self) -> bool:
        return not self.word


def path(q: Quiver, word: Iterable[int] | str) -> Path:
    if isinstance(word, str):
        word = q.parse_word(word)
    word = tuple(word)
    if not word:
        raise ValueError("use trivial_path(v) for vertices")
    if not q.is_path(word):
        raise ValueError(f"{q.format_word(word)} is not a path")
    return Path(q.word_head(word), q.word_tail(word), word)


def trivial_path(v: int) -> Path:
    return Path(v, v, ())


def format_path(q: Quiver, p: Path) -> str:
    return q.format_word(p.word) if p.word else f"e{p.head}"


def _format_terms(items: list[tuple[str, Fraction]]) -> str:
    if not items:
        return "0"
    out = []
    for i, (mono, c) in enumerate(items):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


class PathPoly:
    """A rational linear combination of paths of one quiver."""

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: Quiver, terms: Mapping[Path, object] | None = None):
        self.quiver = quiver
        clean: dict[Path, Fraction] = {}
        for p, c in (terms or {}).items():
            c = as_fraction(c)
            if c:
                clean[p] = clean.get(p, Fraction(0)) + c
        self.terms = {p: c for p, c in clean.items() if c}

    @classmethod
    def from_words(cls, q: Quiver, terms: Mapping[Word, object]) -> "PathPoly":
        return cls(q, {path(q, w): c for w, c in terms.items()})

    @classmethod
    def parse(cls, q: Quiver, text: str) -> "PathPoly":
        """Parse ``"x*y - 2*y*x"`` style input (arrow names separated by ``*``)."""
        from .dsl import parse_linear_combination

        return cls.from_words(q, parse_linear_combination(q, text))

    def _check(self, other: "PathPoly"):
        if other.quiver != self.quiver:
            raise ValueError("path polynomials live over different quivers")

    def __add__(self, other: "PathPoly") -> "PathPoly":
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, Fraction(0)) + c
        return PathPoly(self.quiver, out)

    def __neg__(self) -> "PathPoly":
        return PathPoly(self.quiver, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "PathPoly") -> "PathPoly":
        return self + (-other)

    def scale(self, c) -> "PathPoly":
        c = as_fraction(c)
        return PathPoly(self.quiver, {p: c * v for p, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PathPoly):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        return isinstance(other, PathPoly) and self.quiver == other.quiver and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Path, Fraction]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def word_terms(self) -> dict[Word, Fraction]:
        """The terms keyed by bare words (trivial paths are rejected)."""
        if any(p.is_trivial for p in self.terms):
            raise ValueError("polynomial has a trivial-path component")
        return {p.word: c for p, c in self.terms.items()}

    def degrees(self) -> set[int]:
        return {p.length for p in self.terms}

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("degree is only defined for nonzero homogeneous polynomials")
        return degs.pop()

    def sorted_terms(self) -> list[tuple[Path, Fraction]]:
        """Terms in decreasing deglex order (trivial paths last, by vertex)."""
        return sorted(self.terms.items(), key=lambda t: (deglex_key(t[0].word), -t[0].head), reverse=True)

    def __str__(self) -> str:
        return _format_terms([(format_path(self.quiver, p), c) for p, c in self.sorted_terms()])

    def __repr__(self) -> str:
        return f"PathPoly({self})"


def multiply(f: PathPoly, g: PathPoly) -> PathPoly:
    """Bilinear extension of concatenation; ``p q = 0`` unless ``tail(p) == head(q)``."""
    f._check(g)
    out: dict[Path, Fraction] = {}
    for p, c in f.terms.items():
        for r, e in g.terms.items():
            if p.tail != r.head:
                continue
            prod = Path(p.head, r.tail, p.word + r.word)
            out[prod] = out.get(prod, Fraction(0)) + c * e
    return PathPoly(f.quiver, out)


def cut_right(f: PathPoly, b: int) -> PathPoly:
    """``f b^{-1}``: drop a trailing ``b`` from each path, kill the others."""
    q = f.quiver
    out: dict[Path, Fraction] = {}
    for p, c in f.terms.items():
        if p.word and p.word[-1] == b:
            w = p.word[:-1]
            key = Path(p.head, q.head(b), w)
            out[key] = out.get(key, Fraction(0)) + c
    return PathPoly(q, out)


def cut_left(b: int, f: PathPoly) -> PathPoly:
    """``b^{-1} f``: drop a leading ``b`` from each path, kill the others."""
    q = f.quiver
    out: dict[Path, Fraction] = {}
    for p, c in f.terms.items():
        if p.word and p.word[0] == b:
            w = p.word[1:]
            key = Path(q.tail(b), p.tail, w)
            out[key] = out.get(key, Fraction(0)) + c
    return PathPoly(q, out)


# necklaces ------------------------------------------------------------------


def rotations(word: Word) -> list[Word]:
    return [word[i:] + word[:i] for i in range(len(word))]


def canonical_rotation(word: Word) -> Word:
    """The deglex-greatest rotation (smallest index tuple, arrow 0 being greatest)."""
    return min(rotations(word))


def is_cycle(q: Quiver, word: Word) -> bool:
    return bool(word) and q.is_path(word) and q.word_head(word) == q.word_tail(word)


class CyclicPoly:
    """A homogeneous superpotential: rational combination of necklaces of length ``degree``.

    The zero superpotential still carries a degree so that the complex and
    the expected Hilbert series are defined for it.
    """

    __slots__ = ("quiver", "terms", "degree")

    def __init__(self, quiver: Quiver, terms: Mapping[Word, object], degree: int | None = None):
        self.quiver = quiver
        clean: dict[Word, Fraction] = {}
        for w, c in terms.items():
            w = tuple(w)
            if not is_cycle(quiver, w):
                raise ValueError(f"{quiver.format_word(w)} is not a cycle")
            key = canonical_rotation(w)
            clean[key] = clean.get(key, Fraction(0)) + as_fraction(c)
        self.terms = {w: c for w, c in clean.items() if c}
        lengths = {len(w) for w in clean}
        if len(lengths) > 1:
            raise ValueError(f"superpotential mixes degrees {sorted(lengths)}")
        if degree is None:
            if not lengths:
                raise ValueError("the zero superpotential needs an explicit degree")
            degree = lengths.pop()
        elif lengths and lengths != {degree}:
            raise ValueError(f"terms have degree {lengths.pop()}, expected {degree}")
        if degree < 1:
            raise ValueError("superpotential degree must be at least 1")
        self.degree = degree

    @classmethod
    def parse(cls, q: Quiver, text: str, degree: int | None = None) -> "CyclicPoly":
        from .dsl import parse_linear_combination

        return cls(q, parse_linear_combination(q, text), degree)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CyclicPoly)
            and self.quiver == other.quiver
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def arrows_used(self) -> set[int]:
        return {a for w in self.terms for a in w}

    def sorted_terms(self) -> list[tuple[Word, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0]), reverse=True)

    def __str__(self) -> str:
        return _format_terms([(self.quiver.format_word(w), c) for w, c in self.sorted_terms()])

    def __repr__(self) -> str:
        return f"CyclicPoly({self}; degree={self.degree})"


def necklaces(q: Quiver, d: int) -> list[Word]:
    """All necklaces of length ``d`` in canonical form, sorted deglex-descending."""
    found: set[Word] = set()
    for start in range(q.vertex_count):
        stack: list[tuple[Word, int]] = [((), start)]
        # extend on the right: the next arrow's head must be the current tail
        while stack:
            word, tail = stack.pop()
            if len(word) == d:
                if tail == start:
                    found.add(canonical_rotation(word))
                continue
            for a in q.arrows_into(tail):
                stack.append((word + (a,), q.tail(a)))
    return sorted(found, key=deglex_key, reverse=True)


def cyclic_embed_words(w: CyclicPoly) -> dict[Word, Fraction]:
    out: dict[Word, Fraction] = {}
    for neck, c in w.terms.items():
        for r in rotations(neck):
            out[r] = out.get(r, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def cyclic_embed(w: CyclicPoly) -> PathPoly:
    """Map each necklace to the sum over all its starting positions."""
    return PathPoly.from_words(w.quiver, cyclic_embed_words(w))


def derivative_words(w: CyclicPoly, a: int) -> dict[Word, Fraction]:
    """``∂_a W`` as a dict of words; one term per occurrence of ``a`` in each necklace."""
    out: dict[Word, Fraction] = {}
    for neck, c in w.terms.items():
        for j, x in enumerate(neck):
            if x == a:
                rest = neck[j + 1 :] + neck[:j]
                out[rest] = out.get(rest, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def cyclic_derivative(w: CyclicPoly, a: int) -> PathPoly:
    q = w.quiver
    out = {}
    for word, c in derivative_words(w, a).items():
        key = Path(q.tail(a), q.head(a), word) if not word else path(q, word)
        out[key] = c
    return PathPoly(q, out)


def all_derivatives(w: CyclicPoly) -> list[dict[Word, Fraction]]:
    return [derivative_words(w, a) for a in range(w.quiver.arrow_count)]


class TensorPoly:
    """A rational combination of pairs ``p1 ⊗ p2`` of paths."""

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: Quiver, terms: Mapping[tuple[Path, Path], object] | None = None):
        self.quiver = quiver
        clean: dict[tuple[Path, Path], Fraction] = {}
        for k, c in (terms or {}).items():
            clean[k] = clean.get(k, Fraction(0)) + as_fraction(c)
        self.terms = {k: c for k, c in clean.items() if c}

    def swap(self) -> "TensorPoly":
        return TensorPoly(self.quiver, {(p2, p1): c for (p1, p2), c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorPoly) and self.quiver == other.quiver and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        q = self.quiver
        items = sorted(self.terms.items(), key=lambda t: (deglex_key(t[0][0].word), deglex_key(t[0][1].word)), reverse=True)
        return _format_terms([(f"{format_path(q, p1)}⊗{format_path(q, p2)}", c) for (p1, p2), c in items])

    def __repr__(self) -> str:
        return f"TensorPoly({self})"


def second_derivative(w: CyclicPoly, b: int, a: int) -> TensorPoly:
    """The ``b``-component of the derivation Δ applied to ``∂_a W``.

    Each term ``p1 b p2`` of ``∂_a W`` contributes ``p1 ⊗ p2``, so the pairs
    run over all ways of reading a necklace as a rotation of ``a p1 b p2``.
    """
    q = w.quiver
    out: dict[tuple[Path, Path], Fraction] = {}
    for word, c in derivative_words(w, a).items():
        for j, x in enumerate(word):
            if x != b:
                continue
            p1 = Path(q.tail(a), q.head(b), word[:j])
            p2 = Path(q.tail(b), q.head(a), word[j + 1 :])
            out[(p1, p2)] = out.get((p1, p2), Fraction(0)) + c
    return TensorPoly(q, out)


def cyclic_symmetry_check(w: CyclicPoly) -> bool:
    """Check ``∂²_{ab} W == swap(∂²_{ba} W)`` for every ordered pair of arrows."""
    n = w.quiver.arrow_count
    return all(second_derivative(w, a, b) == second_derivative(w, b, a).swap() for a, b in product(range(n), repeat=2))
