# %% [markdown]
"""
Deciding goodness
=================

Four methods, from cheap to thorough: structural necessary conditions,
the leading-term criterion, comparison of Hilbert series, and exactness
of the graded complex degree by degree.
"""

# %%
import random

from cyquiver import CyclicPoly, FamilySpec, build, check, exactness_check, hilbert_check
from cyquiver.cycheck import build_complex_slice, condsup_check, random_superpotential, rewrite_system_for

q, w, order = build(FamilySpec("Q2", d=4))
print(w)
v = check(q, w, "all", 8)
print(v.method, v.outcome, [s["outcome"] for s in v.details["stages"]])

# %% [markdown]
"""
Dropping the symmetrising term from the anticommutator potential breaks
everything: the leading-term criterion does not apply, the Hilbert series
is too large in degree 3, and the complex has homology there.
"""

# %%
xyz = build(FamilySpec("one_vertex_deg3", k=3))[0]
bad = CyclicPoly.parse(xyz, "X1*X2*X3")
print(condsup_check(xyz, bad).witness)
print(hilbert_check(xyz, bad, 8).witness)
ev = exactness_check(xyz, bad, 8)
print({k: ev.witness[k] for k in ("degree", "position", "homology_dim")})

# %%
rs = rewrite_system_for(bad, 4)
s = build_complex_slice(xyz, bad, rs, 3)
print(s.dims, s.chain_defects(), s.euler_characteristic())

# %% [markdown]
"""
Once one good superpotential exists, almost every other one of the same
degree is good too.  Random coefficients on Q2 at degree 4 show this.
"""

# %%
rng = random.Random(0)
outcomes = []
for _ in range(5):
    wr = random_superpotential(q, 4, (-3, -2, -1, 1, 2, 3), rng)
    outcomes.append(exactness_check(q, wr, 6).outcome)
print(outcomes)
