"""Deterministic instance generators."""

import numpy as np

from .config import DEFAULT
from .errors import BadParameter
from .hull import convex_hull
from .polytope import build_polytope

KINDS = ("tetrahedron", "octahedron", "icosahedron", "bipyramid", "random_sphere",
         "flat_vertex", "cube", "dodecahedron")

GOLDEN = (1 + 5 ** 0.5) / 2


def tetrahedron_points():
    """Regular tetrahedron with unit edge length."""
    s = 1 / (2 * 2 ** 0.5)
    return s * np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)


def octahedron_points():
    return np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]],
                    dtype=float)


def icosahedron_points():
    pts = []
    for a in (-1, 1):
        for b in (-GOLDEN, GOLDEN):
            pts += [(0, a, b), (a, b, 0), (b, 0, a)]
    return np.array(pts, dtype=float)


def cube_points():
    return np.array([[x, y, z] for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)], dtype=float)


def dodecahedron_points():
    pts = [[x, y, z] for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    g, h = GOLDEN, 1 / GOLDEN
    for a in (-1, 1):
        for b in (-1, 1):
            pts += [[0, a * h, b * g], [a * h, b * g, 0], [b * g, 0, a * h]]
    return np.array(pts, dtype=float)


def bipyramid_points(k):
    ang = 2 * np.pi * np.arange(k) / k
    ring = np.column_stack([np.cos(ang), np.sin(ang), np.zeros(k)])
    return np.vstack([ring, [[0, 0, 1], [0, 0, -1]]])


def random_sphere_points(n, seed):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, 3))
    return x / np.linalg.norm(x, axis=1)[:, None]


def add_flat_vertex(p, face):
    """Insert the centroid of ``face`` and fan it into three triangles.

    The new vertex is appended last and the three new faces go to the end
    of the face list, so any base triangle other than ``face`` survives.
    """
    if not 0 <= face < len(p.faces):
        raise BadParameter(f"face {face} out of range 0..{len(p.faces) - 1}")
    a, b, c = (int(v) for v in p.faces[face])
    w = p.n
    centroid = (p.vertices[a] + p.vertices[b] + p.vertices[c]) / 3
    verts = np.vstack([p.vertices, centroid[None, :]])
    faces = [tuple(int(v) for v in t) for f, t in enumerate(p.faces) if f != face]
    faces += [(a, b, w), (b, c, w), (c, a, w)]
    base = p.base if frozenset(p.base) != frozenset((a, b, c)) else faces[0]
    return build_polytope(verts, faces, base=base, config=p.config)


def generate(kind, *params, seed=None, config=DEFAULT):
    """Build a named polytope.

    ``generate("bipyramid", 5)``, ``generate("random_sphere", 50, seed=1)``,
    ``generate("flat_vertex", "octahedron", 0)``.  Output is a pure function
    of the arguments.
    """
    if kind == "flat_vertex":
        if len(params) != 2:
            raise BadParameter("flat_vertex needs (base_kind, face)")
        base_kind, face = params
        if base_kind == "flat_vertex":
            raise BadParameter("flat_vertex cannot be nested")
        inner = generate(base_kind, seed=seed, config=config) if base_kind != "bipyramid" \
            else generate(base_kind, 4, seed=seed, config=config)
        return add_flat_vertex(inner, int(face))
    return convex_hull(_points(kind, params, seed, config), config=config)


def _points(kind, params, seed, config):
    if kind in ("tetrahedron", "octahedron", "icosahedron", "cube", "dodecahedron"):
        if params:
            raise BadParameter(f"{kind} takes no parameters")
        if kind == "tetrahedron" and config.exact:
            # unit edges are irrational; use the integer-coordinate copy
            return [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]
        return globals()[f"{kind}_points"]()
    if kind == "bipyramid":
        if len(params) != 1 or int(params[0]) < 3:
            raise BadParameter("bipyramid needs k >= 3")
        return bipyramid_points(int(params[0]))
    if kind == "random_sphere":
        if len(params) != 1 or int(params[0]) < 4:
            raise BadParameter("random_sphere needs n >= 4")
        if seed is None:
            raise BadParameter("random_sphere needs a seed")
        return random_sphere_points(int(params[0]), seed)
    raise BadParameter(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")


def corpus():
    """The named instances used by the acceptance suite, as (label, polytope)."""
    out = [("tetrahedron", generate("tetrahedron")),
           ("octahedron", generate("octahedron")),
           ("icosahedron", generate("icosahedron"))]
    out += [(f"bipyramid({k})", generate("bipyramid", k)) for k in range(3, 11)]
    out += [(f"random_sphere({n}, {s})", generate("random_sphere", n, seed=s))
            for n in (10, 25, 50, 100, 200) for s in range(20)]
    return out


def small_polytopes():
    return [("tetrahedron", generate("tetrahedron")),
            ("octahedron", generate("octahedron")),
            ("bipyramid(3)", generate("bipyramid", 3)),
            ("flat_vertex(octahedron, 0)", generate("flat_vertex", "octahedron", 0))]


