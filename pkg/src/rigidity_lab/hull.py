"""Incremental 3-d convex hull.

Visibility is decided by the sign of a point against a face plane.  In exact
mode the sign is computed on Fractions; in floating mode a point counts as
strictly beyond a face only when it clears the plane by ``eps_convex *
diameter``.  Coplanar hull triangles are merged into polygons afterwards, so
the hull of a cube comes out as six quads.
"""

import numpy as np

from . import _arith
from .config import DEFAULT
from .errors import DegenerateInput
from .polytope import GeneralPolytope, triangulate_faces


class _Planes:
    def __init__(self, pts, exact, tol):
        self.pts = pts
        self.exact = exact
        self.tol = tol

    def plane(self, tri):
        a, b, c = (self.pts[v] for v in tri)
        normal = np.cross(b - a, c - a)
        if not self.exact:
            normal = normal / np.linalg.norm(normal)
        return normal, _arith.dot(normal, a)

    def height(self, plane, v):
        normal, off = plane
        return _arith.dot(normal, self.pts[v]) - off

    def above(self, plane, v):
        return self.height(plane, v) > self.tol

    def on(self, plane, v):
        h = self.height(plane, v)
        return h == 0 if self.exact else abs(h) <= self.tol


def _initial_simplex(pts, cand, exact, tol):
    p = pts
    i0 = cand[0]
    d = [_arith.sqnorm(p[i] - p[i0]) for i in cand]
    i1 = cand[int(np.argmax([float(x) for x in d]))]
    u = p[i1] - p[i0]
    d = [_arith.sqnorm(np.cross(u, p[i] - p[i0])) for i in cand]
    k = int(np.argmax([float(x) for x in d]))
    i2 = cand[k]
    if d[k] == 0 or (not exact and np.sqrt(float(d[k])) / np.sqrt(float(_arith.sqnorm(u))) <= tol):
        raise DegenerateInput("points are collinear")
    normal = np.cross(u, p[i2] - p[i0])
    h = [_arith.dot(normal, p[i] - p[i0]) for i in cand]
    k = int(np.argmax([abs(float(x)) for x in h]))
    i3 = cand[k]
    if h[k] == 0 or (not exact and abs(float(h[k])) / np.linalg.norm(normal.astype(float)) <= tol):
        raise DegenerateInput("points are coplanar")
    return i0, i1, i2, i3


def _incremental(pts, cand, exact, tol):
    geo = _Planes(pts, exact, tol)
    simplex = _initial_simplex(pts, cand, exact, tol)
    centroid = sum(pts[v] for v in simplex) / 4
    faces = {}
    next_id = 0
    for tri in ((simplex[0], simplex[1], simplex[2]), (simplex[0], simplex[1], simplex[3]),
                (simplex[0], simplex[2], simplex[3]), (simplex[1], simplex[2], simplex[3])):
        plane = geo.plane(tri)
        if _arith.dot(plane[0], centroid) - plane[1] > 0:
            tri = (tri[0], tri[2], tri[1])
            plane = geo.plane(tri)
        faces[next_id] = (tri, plane)
        next_id += 1
    edge_face = {}
    for fid, (tri, _) in faces.items():
        for k in range(3):
            edge_face[(tri[k], tri[(k + 1) % 3])] = fid

    for v in cand:
        if v in simplex:
            continue
        visible = {fid for fid, (_, plane) in faces.items() if geo.above(plane, v)}
        if not visible:
            continue
        horizon = []
        for fid in visible:
            tri = faces[fid][0]
            for k in range(3):
                a, b = tri[k], tri[(k + 1) % 3]
                if edge_face[(b, a)] not in visible:
                    horizon.append((a, b))
        for fid in visible:
            tri = faces.pop(fid)[0]
            for k in range(3):
                del edge_face[(tri[k], tri[(k + 1) % 3])]
        for a, b in horizon:
            tri = (a, b, v)
            faces[next_id] = (tri, geo.plane(tri))
            for k in range(3):
                edge_face[(tri[k], tri[(k + 1) % 3])] = next_id
            next_id += 1
    return faces, edge_face, geo


def _non_extreme(faces, geo):
    """Hull vertices that lie on an edge or inside a face of the hull."""
    normals = {}
    for tri, (normal, _) in faces.values():
        for v in tri:
            normals[v] = normal if v not in normals else normals[v] + normal
    verts = sorted(normals)
    bad = []
    for v in verts:
        nbar = normals[v]
        if not geo.exact:
            nbar = nbar / np.linalg.norm(nbar)
        plane = (nbar, _arith.dot(nbar, geo.pts[v]))
        if any(not geo.height(plane, w) < -geo.tol for w in verts if w != v):
            bad.append(v)
    return bad


def _merge_coplanar(faces, edge_face, geo):
    fids = sorted(faces)
    parent = {f: f for f in fids}

    def find(f):
        while parent[f] != f:
            parent[f] = parent[parent[f]]
            f = parent[f]
        return f

    for (a, b), f in edge_face.items():
        g = edge_face[(b, a)]
        if f < g:
            apex = [w for w in faces[g][0] if w not in (a, b)][0]
            if geo.on(faces[f][1], apex):
                parent[find(g)] = find(f)

    groups = {}
    for f in fids:
        groups.setdefault(find(f), []).append(f)
    polygons = []
    for members in groups.values():
        if len(members) == 1:
            polygons.append(faces[members[0]][0])
            continue
        inside = set(members)
        succ = {}
        for f in members:
            tri = faces[f][0]
            for k in range(3):
                a, b = tri[k], tri[(k + 1) % 3]
                if edge_face[(b, a)] not in inside:
                    succ[a] = b
        start = min(succ)
        cycle = [start]
        while succ[cycle[-1]] != start:
            cycle.append(succ[cycle[-1]])
        polygons.append(tuple(cycle))
    return polygons


def hull_polygons(points, config=DEFAULT):
    """Convex hull as a GeneralPolytope with coplanar facets merged.

    Only extreme points survive; they keep their relative input order.
    """
    pts = _arith.coords(points, config.exact)
    if len(pts) < 4:
        raise DegenerateInput(f"need at least 4 points, got {len(pts)}")
    tol = 0 if config.exact else config.eps_convex * _arith.diameter(pts)
    cand = list(range(len(pts)))
    while True:
        faces, edge_face, geo = _incremental(pts, cand, config.exact, tol)
        bad = _non_extreme(faces, geo)
        if not bad:
            break
        used = {v for tri, _ in faces.values() for v in tri}
        cand = [v for v in cand if v in used and v not in bad]
    polygons = _merge_coplanar(faces, edge_face, geo)

    keep = sorted({v for poly in polygons for v in poly})
    remap = {v: i for i, v in enumerate(keep)}
    out = []
    for poly in polygons:
        poly = [remap[v] for v in poly]
        k = poly.index(min(poly))
        out.append(tuple(poly[k:] + poly[:k]))
    out.sort()
    verts = pts[keep]
    return GeneralPolytope(verts, tuple(out))


def convex_hull(points, config=DEFAULT, base=None):
    """Triangulated convex hull of ``points``.

    Merged polygonal facets are fanned from their lowest vertex, so the
    result is strictly convex only when no facet had more than three
    vertices.
    """
    return triangulate_faces(hull_polygons(points, config), base=base, config=config)
