"""
Counting inversions
===================

Orient the edges from a velocity field, count inversions at every face
corner, and run the full audit.
"""

# %%
# A unit translation of the octahedron along z.  The four equatorial edges
# are perpendicular to the motion and stay unoriented.
from rigidity_lab import (TrivialMotion, VelocityField, classify, generate, global_audit,
                          lemma1_enumeration, to_dot, trivial_field)

p = generate("octahedron")
f = trivial_field(TrivialMotion(translation=(0, 0, 1)), p)
g = classify(p, f)
print("half-units per vertex", g.vertex_totals.tolist())
print("half-units per face  ", g.face_totals.tolist())

# %%
# Every triangle with a moving corner carries at least one inversion.
# This is checked by brute force over all abstract triangle states.
print(lemma1_enumeration())

# %%
# The audit report bundles counts, the active decomposition and bounds.
rep = global_audit(p, f)
print(rep.verdict, rep.total, [c.to_dict()["t"] for c in rep.components])

# %%
# The zero field has nothing to audit.
print(global_audit(p, VelocityField.zeros(p.n)).verdict)

# %%
# DOT output for graphviz; dead vertices are filled black.
print(to_dot(g))
