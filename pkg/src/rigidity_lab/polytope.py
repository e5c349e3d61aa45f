"""Simplicial polytopes: validation, orientation and fan triangulation."""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _arith
from .config import DEFAULT, ToleranceConfig
from .errors import (BaseNotAFace, DegenerateFace, EulerViolation, NonManifold,
                     NotConvex, PolytopeError)


@dataclass(frozen=True, eq=False)
class GeneralPolytope:
    """Closed polyhedral surface with convex planar polygon faces."""

    vertices: np.ndarray
    faces: tuple

    @property
    def n(self):
        return len(self.vertices)

    @property
    def face_sizes(self):
        return [len(f) for f in self.faces]

    def is_simplicial(self):
        return all(len(f) == 3 for f in self.faces)


@dataclass(frozen=True, eq=False)
class SimplicialPolytope:
    """Validated triangulated sphere in R^3 with a designated base triangle.

    Faces are stored with outward orientation. ``edges`` is the sorted list
    of index pairs ``(i, j)`` with ``i < j``; every edge-indexed array in the
    package follows that order.
    """

    vertices: np.ndarray
    faces: np.ndarray
    edges: np.ndarray
    base: tuple
    strict: bool
    config: ToleranceConfig = field(default=DEFAULT, repr=False)

    @property
    def n(self):
        return len(self.vertices)

    @property
    def exact(self):
        return _arith.is_exact(self.vertices)

    @cached_property
    def diameter(self):
        return _arith.diameter(self.vertices)

    @cached_property
    def edge_index(self):
        return {(int(i), int(j)): k for k, (i, j) in enumerate(self.edges)}

    def edge_id(self, u, v):
        return self.edge_index[(u, v) if u < v else (v, u)]

    @cached_property
    def corner_edges(self):
        """(F, 3, 2) edge ids: the two edges at each face corner."""
        out = np.empty((len(self.faces), 3, 2), dtype=np.intp)
        for f, tri in enumerate(self.faces):
            for k in range(3):
                apex, nxt, prv = int(tri[k]), int(tri[(k + 1) % 3]), int(tri[k - 1])
                out[f, k, 0] = self.edge_id(apex, nxt)
                out[f, k, 1] = self.edge_id(apex, prv)
        return out

    @cached_property
    def corner_index(self):
        """Lookup ``(face, apex) -> (edge_id, edge_id)``."""
        ce = self.corner_edges
        return {(f, int(self.faces[f, k])): (int(ce[f, k, 0]), int(ce[f, k, 1]))
                for f in range(len(self.faces)) for k in range(3)}

    @cached_property
    def vertex_faces(self):
        star = [[] for _ in range(self.n)]
        for f, tri in enumerate(self.faces):
            for v in tri:
                star[int(v)].append(f)
        return star

    @cached_property
    def degrees(self):
        return np.bincount(self.edges.ravel(), minlength=self.n)

    def face_of(self, triple):
        """Index of the face with vertex set ``triple``, or ``None``."""
        key = frozenset(int(v) for v in triple)
        for f, tri in enumerate(self.faces):
            if frozenset(int(v) for v in tri) == key:
                return f
        return None

    def euler_characteristic(self):
        return self.n - len(self.edges) + len(self.faces)

    def with_base(self, base):
        f = self.face_of(base)
        if f is None:
            raise BaseNotAFace(f"{tuple(base)} is not a face")
        return SimplicialPolytope(self.vertices, self.faces, self.edges,
                                  tuple(int(v) for v in self.faces[f]),
                                  self.strict, self.config)

    def to_general(self):
        return GeneralPolytope(self.vertices, tuple(tuple(int(v) for v in t) for t in self.faces))


def _orient_cycles(cycles, n):
    """Orient face cycles coherently.

    Returns the re-oriented cycles and the map from undirected edge to the
    faces containing it.  Raises NonManifold for edges not shared by exactly
    two faces or for a non-orientable surface.
    """
    edge_faces = {}
    for f, cyc in enumerate(cycles):
        for k in range(len(cyc)):
            u, v = cyc[k], cyc[(k + 1) % len(cyc)]
            edge_faces.setdefault((min(u, v), max(u, v)), []).append(f)
    for e, fs in edge_faces.items():
        if len(fs) != 2:
            raise NonManifold(f"edge {e} lies in {len(fs)} faces")

    def directed(cyc):
        return {(cyc[k], cyc[(k + 1) % len(cyc)]) for k in range(len(cyc))}

    flip = [None] * len(cycles)
    for start in range(len(cycles)):
        if flip[start] is not None:
            continue
        flip[start] = False
        queue = deque([start])
        while queue:
            f = queue.popleft()
            cyc = cycles[f][::-1] if flip[f] else cycles[f]
            for u, v in directed(cyc):
                g = [h for h in edge_faces[(min(u, v), max(u, v))] if h != f][0]
                want = (v, u) in directed(cycles[g])
                need_flip = not want
                if flip[g] is None:
                    flip[g] = need_flip
                    queue.append(g)
                elif flip[g] != need_flip:
                    raise NonManifold("surface is not orientable")
    oriented = [tuple(c[::-1]) if fl else tuple(c) for c, fl in zip(cycles, flip)]
    return oriented, edge_faces


def _signed_volume6(vertices, cycles):
    total = 0
    for cyc in cycles:
        a = vertices[cyc[0]]
        for k in range(1, len(cyc) - 1):
            b, c = vertices[cyc[k]], vertices[cyc[k + 1]]
            total = total + _arith.dot(a, np.cross(b, c))
    return total


def _check_indices(cycles, n, min_len):
    out = []
    for f, cyc in enumerate(cycles):
        cyc = tuple(int(v) for v in cyc)
        if len(cyc) < min_len:
            raise PolytopeError(f"face {f} has {len(cyc)} vertices")
        if len(set(cyc)) != len(cyc):
            raise DegenerateFace(f"face {f} repeats a vertex: {cyc}")
        if min(cyc) < 0 or max(cyc) >= n:
            raise PolytopeError(f"face {f} has an index out of range: {cyc}")
        out.append(cyc)
    return out


def _face_normals(vertices, faces):
    a, b, c = vertices[faces[:, 0]], vertices[faces[:, 1]], vertices[faces[:, 2]]
    return np.cross(b - a, c - a)


def _convexity_margin_ok(vertices, faces, normals, diam, config):
    """True if every non-face vertex is strictly below every face plane."""
    n = len(vertices)
    own = np.zeros((len(faces), n), dtype=bool)
    own[np.arange(len(faces))[:, None], faces] = True
    if _arith.is_exact(vertices):
        offs = _arith.dot(normals, vertices[faces[:, 0]])
        side = vertices @ normals.T - offs[None, :]
        return all(side[v, f] < 0 for f in range(len(faces)) for v in range(n)
                   if not own[f, v])
    unit = normals / np.linalg.norm(normals, axis=1)[:, None]
    offs = _arith.dot(unit, vertices[faces[:, 0]])
    side = vertices @ unit.T - offs[None, :]
    side[own.T] = -np.inf
    return bool(side.max() <= -config.eps_convex * diam)


def build_polytope(vertices, faces, base=None, config=DEFAULT, require_strict=False):
    """Validate a triangulated closed surface and return a SimplicialPolytope.

    ``base`` is an index triple naming one of the faces (any order); it
    defaults to face 0.  Faces are re-oriented coherently and outward.  The
    ``strict`` flag of the result records whether the convexity margin test
    passed; with ``require_strict`` a failure raises NotConvex.
    """
    verts = _arith.coords(vertices, config.exact)
    n = len(verts)
    if n < 4:
        raise PolytopeError(f"need at least 4 vertices, got {n}")
    cycles = _check_indices(faces, n, 3)
    if any(len(c) != 3 for c in cycles):
        raise PolytopeError("all faces must be triangles; use triangulate_faces")
    cycles, edge_faces = _orient_cycles(cycles, n)

    nf, ne = len(cycles), len(edge_faces)
    if n - ne + nf != 2:
        raise EulerViolation(f"V - E + F = {n} - {ne} + {nf} = {n - ne + nf}, expected 2")
    if nf != 2 * n - 4:
        raise EulerViolation(f"F = {nf}, expected 2n - 4 = {2 * n - 4}")

    tris = np.array(cycles, dtype=np.intp)
    normals = _face_normals(verts, tris)
    diam = _arith.diameter(verts)
    if config.exact:
        bad = [f for f in range(nf) if all(x == 0 for x in normals[f])]
    else:
        area2 = np.linalg.norm(normals, axis=1)
        bad = np.flatnonzero(area2 <= 2 * config.eps_convex * diam ** 2).tolist()
    if bad:
        raise DegenerateFace(f"face {bad[0]} {cycles[bad[0]]} has zero area")

    vol = _signed_volume6(verts, cycles)
    if vol == 0:
        raise DegenerateFace("enclosed volume is zero")
    if vol < 0:
        tris = tris[:, ::-1].copy()
        normals = -normals

    strict = _convexity_margin_ok(verts, tris, normals, diam, config)
    if require_strict and not strict:
        raise NotConvex("some vertex fails the strict convexity margin")

    edges = np.array(sorted(edge_faces), dtype=np.intp).reshape(-1, 2)
    if base is None:
        base_face = 0
    else:
        key = frozenset(int(v) for v in base)
        matches = [f for f in range(nf) if frozenset(tris[f].tolist()) == key]
        if len(key) != 3 or not matches:
            raise BaseNotAFace(f"base {tuple(base)} is not a face")
        base_face = matches[0]

    verts.flags.writeable = False
    tris.flags.writeable = False
    edges.flags.writeable = False
    return SimplicialPolytope(verts, tris, edges, tuple(int(v) for v in tris[base_face]),
                              strict, config)


def validate_general(p, config=DEFAULT):
    """Check the GeneralPolytope invariants and return a coherently oriented copy."""
    verts = _arith.coords(p.vertices, config.exact)
    n = len(verts)
    cycles = _check_indices(p.faces, n, 3)
    cycles, edge_faces = _orient_cycles(cycles, n)
    chi = n - len(edge_faces) + len(cycles)
    if chi != 2:
        raise EulerViolation(f"V - E + F = {chi}, expected 2")
    diam = _arith.diameter(verts)
    for f, cyc in enumerate(cycles):
        if len(cyc) == 3:
            continue
        pts = verts[list(cyc)]
        normal = sum(np.cross(pts[k], pts[(k + 1) % len(cyc)]) for k in range(len(cyc)))
        off = pts - pts[0]
        side = off @ normal
        if config.exact:
            flat = all(s == 0 for s in side)
        else:
            nn = np.linalg.norm(normal)
            flat = nn > 0 and np.abs(side).max() <= config.eps_convex * diam * nn
        if not flat:
            raise PolytopeError(f"face {f} is not planar")
    vol = _signed_volume6(verts, cycles)
    if vol < 0:
        cycles = [tuple(c[::-1]) for c in cycles]
    return GeneralPolytope(verts, tuple(cycles))


def fan_triangles(cycle):
    """Fan a polygon from its lowest-index vertex, keeping its orientation."""
    cycle = tuple(int(v) for v in cycle)
    if len(cycle) == 3:
        return [cycle]
    k = cycle.index(min(cycle))
    c = cycle[k:] + cycle[:k]
    return [(c[0], c[i], c[i + 1]) for i in range(1, len(c) - 1)]


def triangulate_faces(p, base=None, config=DEFAULT):
    """Replace every k-gon by k - 2 fan triangles and validate the result.

    Triangles already present are kept verbatim.  The vertex set is not
    touched, so flat diagonals show up as ``strict = False``.
    """
    q = validate_general(p, config)
    tris = [t for cyc in q.faces for t in fan_triangles(cyc)]
    return build_polytope(q.vertices, tris, base=base, config=config)


def surface_area(vertices, faces):
    v = _arith.to_float(np.asarray(vertices))
    total = 0.0
    for cyc in faces:
        for a, b, c in fan_triangles(cyc):
            total += 0.5 * np.linalg.norm(np.cross(v[b] - v[a], v[c] - v[a]))
    return total
