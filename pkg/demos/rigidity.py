"""
Infinitesimal rigidity
======================

Assemble the rigidity matrix, compute its kernel and decide rigidity.
"""

# %%
import numpy as np

from rigidity_lab import (TrivialMotion, generate, is_infinitesimally_rigid, kernel, plant,
                          residuals, rigidity_matrix, trivial_field)

p = generate("icosahedron")
m = rigidity_matrix(p)
print("matrix shape", m.shape)

# %%
# The full kernel holds the six rigid motions.  Pinning the base triangle
# removes them; a rigid polytope is left with nothing.
k = kernel(m)
print("kernel dimension", k.dimension, "gap ratio %.2e" % k.singular_value_gap)
pk = kernel(plant(m, p.base))
print("planted kernel dimension", pk.dimension)

# %%
# A rotation about an arbitrary axis satisfies every edge constraint.
f = trivial_field(TrivialMotion(translation=(0.2, 0, 0), angular=(1, 2, 3)), p)
print("max residual %.1e" % np.abs(residuals(m, f)).max())

# %%
# The whole decision in one call, on a larger random polytope.
q = generate("random_sphere", 200, seed=3)
v = is_infinitesimally_rigid(q)
print("rigid:", v.rigid, "planted gap %.2e" % v.planted.singular_value_gap)

# %%
# In exact mode the kernel comes from rational row reduction.
from rigidity_lab import EXACT

e = generate("octahedron", config=EXACT)
print("exact:", is_infinitesimally_rigid(e, config=EXACT).rigid)
