"""
Building polytopes
==================

Generate convex polytopes, triangulate them, and check the vertex, edge
and face counts of a triangulated sphere.
"""

# %%
# Generators return a :class:`SimplicialPolytope` with outward faces and a
# default base triangle (face 0).
from rigidity_lab import convex_hull, generate, hull_polygons, triangulate_faces
from rigidity_lab.generators import cube_points, random_sphere_points

for kind, params in [("tetrahedron", ()), ("octahedron", ()), ("icosahedron", ()),
                     ("bipyramid", (7,))]:
    p = generate(kind, *params)
    print(f"{kind:12s} n={p.n:3d} E={len(p.edges):3d} F={len(p.faces):3d} "
          f"2n-4={2 * p.n - 4:3d} chi={p.euler_characteristic()}")

# %%
# Hulls of random points on the sphere are simplicial with probability one.
p = convex_hull(random_sphere_points(100, seed=7))
print("random sphere:", p.n, len(p.faces), "strict:", p.strict)

# %%
# A cube has square faces.  Fan triangulation adds a diagonal per square;
# the result is still a sphere but no longer strictly convex, because the two
# triangles of each square are coplanar.
g = hull_polygons(cube_points())
print("cube face sizes:", g.face_sizes)
t = triangulate_faces(g)
print("triangulated:", len(t.faces), "faces, strict:", t.strict)

# %%
# The same pipeline runs on rationals.
from fractions import Fraction
from rigidity_lab import EXACT

q = convex_hull([[Fraction(1, 3), 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]], config=EXACT)
print(q.vertices)
