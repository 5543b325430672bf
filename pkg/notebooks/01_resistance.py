"""
Effective resistance on small graphs
====================================

Resistances from the conjugate-gradient solver, checked against the dense
pseudoinverse and a few closed forms.
"""

# %%
import numpy as np

from btlres import generators as gen
from btlres.resistance import (
    dense_pinv_oracle,
    effective_resistance,
    resistance_summary,
    resistances_from_pinv,
)

# %% [markdown]
# A path of 6 nodes: resistance between the ends equals the number of edges.

# %%
line = gen.generate(gen.FamilySpec("line", 6))
print("path ends:", effective_resistance(line, 0, 5))

# %% [markdown]
# On a circle two arcs of length j and n - j are in parallel.

# %%
circle = gen.generate(gen.FamilySpec("circle", 10))
for j in (1, 3, 5):
    print(j, effective_resistance(circle, 0, j), j * (10 - j) / 10)

# %%
barbell = gen.generate(gen.FamilySpec("barbell", 15))
omega = resistances_from_pinv(dense_pinv_oracle(barbell))
print("largest dense-oracle resistance:", omega.max())
print(resistance_summary(barbell))

# %% [markdown]
# The mean resistance of a 2D lattice creeps up like log n while the 3D
# lattice stays flat.

# %%
for fam, sizes in (("grid2d", (16, 64, 256)), ("grid3d", (27, 64, 216))):
    avgs = [resistance_summary(gen.generate(gen.FamilySpec(fam, n))).omega_avg for n in sizes]
    print(fam, np.round(avgs, 4))
