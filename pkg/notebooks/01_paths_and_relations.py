# %% [markdown]
"""
Paths, superpotentials and their relations
==========================================

A quiver is built from a list of ``(name, tail, head)`` arrows.  Words are
read right to left: ``a*b`` is a path when the tail of ``a`` is the head
of ``b``.
"""

# %%
from cyquiver import Quiver
from cyquiver.pathalg import CyclicPoly, PathPoly, cyclic_derivative, cyclic_embed, second_derivative
from cyquiver.groebner import (
    RewriteSystem,
    complete,
    find_ambiguities,
    normal_form,
    resolve_ambiguity,
    standard_monomial_counts,
)
from cyquiver.pathalg import all_derivatives

q = Quiver.from_edges(2, [("a1", 0, 1), ("a2", 0, 1), ("a3", 1, 0), ("a4", 1, 0)])
print(q)

# %% [markdown]
"""
A superpotential is a combination of cycles up to rotation.  Each necklace
is stored in its deglex-greatest rotation.
"""

# %%
w = CyclicPoly.parse(q, "a1*a3*a2*a4 + a3*a1*a4*a2")
print("W      =", w)
print("rot(W) =", cyclic_embed(w))

# %%
for a in range(q.arrow_count):
    print(f"d_{q.names[a]} W =", cyclic_derivative(w, a))

# second derivative: pairs (p1, p2) with a*p1*b*p2 a rotation of W
print(second_derivative(w, q.index("a3"), q.index("a1")))

# %% [markdown]
"""
The relations generate an ideal.  Interreducing them gives a rewrite
system; its overlaps are the ambiguities, and each one resolves here.
"""

# %%
rs = RewriteSystem.from_relations(q, all_derivatives(w))
for amb in find_ambiguities(rs):
    ok, residue = resolve_ambiguity(amb, rs)
    print(amb.format(q), "resolvable" if ok else f"residue {residue}")

# %%
done = complete(rs, 8)
for n, h in enumerate(standard_monomial_counts(done, 8)):
    print(n, h.tolist())

# %%
f = PathPoly.parse(q, "a1*a3*a2*a4*a1")
print(f, "->", normal_form(f, done))
