"""
Why convexity matters
=====================

Put an extra vertex in the middle of an octahedron face.  The surface is
still a triangulated sphere but the new vertex can move off the face plane
without stretching any edge, to first order.
"""

# %%
import numpy as np

from rigidity_lab import classify, generate, global_audit, is_infinitesimally_rigid

p = generate("flat_vertex", "octahedron", 0)
print("n", p.n, "strict", p.strict)

# %%
v = is_infinitesimally_rigid(p)
print("rigid:", v.rigid, "planted kernel dimension:", v.planted.dimension)
print("witness (nonzero rows):")
for i, row in enumerate(v.witness.a):
    if np.any(row != 0):
        print(i, np.round(row, 6))

# %%
# The only moving vertex has all three edges unoriented: 2 half-units per
# corner, 6 in total, where a convex vertex would need at most 4.
g = classify(p, v.witness)
print("half-units at the flat vertex:", g.vertex_totals[6])
rep = global_audit(p, v.witness)
print(rep.verdict, rep.detail)
