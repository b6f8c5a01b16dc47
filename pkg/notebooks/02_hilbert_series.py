# %% [markdown]
"""
Expected Hilbert series and the positivity screen
=================================================

For a good superpotential of degree ``d`` the matrix Hilbert series of the
quotient is the inverse of ``1 - M t + M^T t^(d-1) - t^d``.  Three series
built from it must have no negative coefficient.
"""

# %%
from cyquiver import check_inequalities, expected_cy_series
from cyquiver.families import cyclic_quiver
from cyquiver.hilbert import MatSeries, inequality_series, series_invert
from cyquiver.quiver import Quiver


def loops(k):
    return Quiver.from_edges(1, [(f"X{i}", 0, 0) for i in range(1, k + 1)])


# %%
h = expected_cy_series(loops(3), 3, 10)
print([int(c[0, 0]) for c in h.coeffs])

# %% [markdown]
"""
Two loops and cubic relations: the second series turns negative at degree 4,
so no degree-3 superpotential on two loops is good.
"""

# %%
series = inequality_series(loops(2), 3, 10)
for name, s in series.items():
    print(name, [str(c[0, 0]) for c in s.coeffs])
print(check_inequalities(loops(2), 3, 10).first_failure())

# %%
for p in [(2, 2, 2, 2), (6, 2, 2, 2)]:
    rep = check_inequalities(cyclic_quiver(p), 4, 16)
    print(p, "pass" if rep.passed else rep.first_failure())

# %% [markdown]
"""
Series arithmetic is exact and truncated; inverting and multiplying back
returns the identity up to the truncation.
"""

# %%
f = MatSeries.scalar([1, -2, 0, 2, -1], 8)
g = series_invert(f)
print(g)
print(f * g)
