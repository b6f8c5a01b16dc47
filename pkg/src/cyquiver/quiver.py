"""Quivers: vertices, ordered arrows and incidence data.

Vertices are the integers ``0..n-1``.  Arrows are stored in a list whose
position doubles as the arrow order used by every deglex comparison in the
package: the arrow at position 0 is the *greatest* arrow.

Paths follow right-to-left composition, so a word ``a1 a2 ... ak`` is a path
when ``tail(a_i) == head(a_{i+1})``.  The incidence matrix counts arrows by
``(head, tail)``, which makes ``incidence_matrix(q)[i, j]`` the number of
length-one paths from ``j`` to ``i``.  With that convention the matrix-valued
Hilbert series ``(h_k)_{ij} = dim i A_k j`` of the free path algebra is
``1 / (1 - M t)`` and the one-vertex formulas come out unchanged.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    tail: int
    head: int

    def __str__(self) -> str:
        return f"{self.name}: {self.tail}->{self.head}"


@dataclass(frozen=True)
class Quiver:
    """An immutable quiver with a total order on its arrows.

    ``arrows[0]`` is the greatest arrow.  Use :meth:`reordered` to obtain the
    same quiver under a different order.
    """

    vertex_count: int
    arrows: tuple[Arrow, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.vertex_count < 1:
            raise QuiverError("a quiver needs at least one vertex")
        arrows = tuple(self.arrows)
        object.__setattr__(self, "arrows", arrows)
        index = {}
        for i, arrow in enumerate(arrows):
            for v in (arrow.tail, arrow.head):
                if not 0 <= v < self.vertex_count:
                    raise QuiverError(
                        f"arrow {arrow.name!r} uses vertex {v}, expected 0..{self.vertex_count - 1}"
                    )
            if arrow.name in index:
                raise QuiverError(f"duplicate arrow id {arrow.name!r}")
            index[arrow.name] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[str, int, int]]) -> "Quiver":
        """Build from ``(name, tail, head)`` triples, greatest arrow first."""
        return cls(vertex_count, tuple(Arrow(n, t, h) for n, t, h in edges))

    # basic accessors -------------------------------------------------------

    @property
    def arrow_count(self) -> int:
        return len(self.arrows)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.arrows)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def head(self, a: int) -> int:
        return self.arrows[a].head

    def tail(self, a: int) -> int:
        return self.arrows[a].tail

    def arrows_into(self, v: int) -> list[int]:
        return [i for i, a in enumerate(self.arrows) if a.head == v]

    def arrows_out_of(self, v: int) -> list[int]:
        return [i for i, a in enumerate(self.arrows) if a.tail == v]

    def compare_arrows(self, a: int, b: int) -> int:
        """Return 1 if arrow ``a`` is greater than ``b``, -1 if smaller, 0 if equal."""
        return (a < b) - (a > b)

    def reordered(self, names: Sequence[str]) -> "Quiver":
        """The same quiver with arrows listed (and ordered) as ``names``."""
        if sorted(names) != sorted(self.names):
            raise QuiverError("order must mention every arrow exactly once")
        return Quiver(self.vertex_count, tuple(self.arrows[self.index(n)] for n in names))

    def reversed(self) -> "Quiver":
        """The opposite quiver: every arrow flipped, order kept."""
        return Quiver(self.vertex_count, tuple(Arrow(a.name, a.head, a.tail) for a in self.arrows))

    # words -----------------------------------------------------------------

    def is_path(self, word: Sequence[int]) -> bool:
        return all(self.tail(word[i]) == self.head(word[i + 1]) for i in range(len(word) - 1))

    def word_head(self, word: Sequence[int]) -> int:
        return self.head(word[0])

    def word_tail(self, word: Sequence[int]) -> int:
        return self.tail(word[-1])

    def format_word(self, word: Sequence[int]) -> str:
        return "*".join(self.arrows[a].name for a in word)

    def parse_word(self, text: str) -> tuple[int, ...]:
        return tuple(self.index(tok.strip()) for tok in text.split("*") if tok.strip())

    def __str__(self) -> str:
        arrows = ", ".join(str(a) for a in self.arrows)
        return f"Quiver({self.vertex_count} vertices; {arrows})"


def incidence_matrix(q: Quiver) -> np.ndarray:
    """Entry ``(i, j)`` is the number of arrows with head ``i`` and tail ``j``."""
    m = np.zeros((q.vertex_count, q.vertex_count), dtype=np.int64)
    for a in q.arrows:
        m[a.head, a.tail] += 1
    return m


def _reachable(start: int, neighbours: list[set[int]]) -> set[int]:
    seen = {start}
    todo = deque([start])
    while todo:
        v = todo.popleft()
        for w in neighbours[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def is_connected(q: Quiver) -> bool:
    nbrs: list[set[int]] = [set() for _ in range(q.vertex_count)]
    for a in q.arrows:
        nbrs[a.tail].add(a.head)
        nbrs[a.head].add(a.tail)
    return len(_reachable(0, nbrs)) == q.vertex_count


def is_strongly_connected(q: Quiver) -> bool:
    fwd: list[set[int]] = [set() for _ in range(q.vertex_count)]
    bwd: list[set[int]] = [set() for _ in range(q.vertex_count)]
    for a in q.arrows:
        fwd[a.tail].add(a.head)
        bwd[a.head].add(a.tail)
    n = q.vertex_count
    return len(_reachable(0, fwd)) == n and len(_reachable(0, bwd)) == n


def degree_defects(q: Quiver) -> list[tuple[int, str, int]]:
    """Vertices that are the tail or head of fewer than two arrows.

    Returns ``(vertex, "out" | "in", count)`` triples.
    """
    out = []
    for v in range(q.vertex_count):
        n_out = len(q.arrows_out_of(v))
        n_in = len(q.arrows_into(v))
        if n_out < 2:
            out.append((v, "out", n_out))
        if n_in < 2:
            out.append((v, "in", n_in))
    return out


def degree_condition(q: Quiver) -> bool:
    """Every vertex is the source of at least two arrows and the target of at least two."""
    return not degree_defects(q)
