"""Hypothesis strategies for quivers, words and superpotentials."""

from __future__ import annotations

from hypothesis import strategies as st

from cyquiver.pathalg import CyclicPoly, necklaces
from cyquiver.quiver import Quiver


@st.composite
def quivers(draw, max_vertices=3, max_arrows=6, min_arrows=0):
    n = draw(st.integers(1, max_vertices))
    m = draw(st.integers(min_arrows, max_arrows))
    edges = [(f"a{i}", draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))) for i in range(m)]
    return Quiver.from_edges(n, edges)


@st.composite
def strongly_connected_quivers(draw, max_vertices=3, max_extra=4):
    """A directed cycle through every vertex plus random extra arrows."""
    n = draw(st.integers(1, max_vertices))
    edges = [(f"c{v}", v, (v + 1) % n) for v in range(n)]
    for i in range(draw(st.integers(0, max_extra))):
        edges.append((f"e{i}", draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))))
    return Quiver.from_edges(n, edges)


@st.composite
def paths_in(draw, q: Quiver, min_len=1, max_len=5):
    """A random composable word, built by walking backwards from a random arrow."""
    if q.arrow_count == 0:
        return ()
    word = [draw(st.integers(0, q.arrow_count - 1))]
    target = draw(st.integers(min_len, max_len))
    while len(word) < target:
        options = q.arrows_into(q.tail(word[-1]))
        if not options:
            break
        word.append(draw(st.sampled_from(options)))
    return tuple(word)


@st.composite
def superpotentials(draw, max_degree=6, max_vertices=3):
    """A random nonzero CyclicPoly on a strongly connected quiver."""
    q = draw(strongly_connected_quivers(max_vertices=max_vertices))
    degrees = [d for d in range(1, max_degree + 1) if necklaces(q, d)]
    d = draw(st.sampled_from(degrees))
    necks = necklaces(q, d)
    chosen = draw(st.lists(st.sampled_from(necks), min_size=1, max_size=min(5, len(necks)), unique=True))
    coeffs = [draw(st.integers(-4, 4).filter(bool)) for _ in chosen]
    return CyclicPoly(q, dict(zip(chosen, coeffs)), d)
