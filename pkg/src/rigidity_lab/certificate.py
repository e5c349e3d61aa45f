"""Edge orientation, inversion counting and the global counting audit.

Inversions are counted in integer half-units: a half-inversion is 1, a full
inversion is 2.  Edge-indexed arrays follow ``polytope.edges``; an edge
``(i, j)`` with ``i < j`` is FORWARD when it is oriented ``i -> j``.
"""

from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from itertools import product
from typing import NamedTuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import _arith
from .errors import DimensionMismatch, IdentityViolation, MixedSigns


class EdgeClass(IntEnum):
    UNORIENTED = 0
    FORWARD = 1
    BACKWARD = 2


_UNORIENTED, _FORWARD = int(EdgeClass.UNORIENTED), int(EdgeClass.FORWARD)


class EdgeState(NamedTuple):
    cls: EdgeClass
    p_i: object
    p_j: object


# orientation of an edge as seen from one endpoint
OUT, NONE, IN = 1, 0, -1


def corner_half_units(r1, r2, apex_live):
    """Half-units for two edges at a common apex.

    ``r1`` and ``r2`` are OUT, IN or NONE relative to the apex.
    """
    if r1 != NONE and r2 != NONE:
        return 2 if r1 != r2 else 0
    if r1 != NONE or r2 != NONE:
        return 1
    return 2 if apex_live else 0


def _velocity_scale(a):
    return max(float(np.sqrt(float(x))) for x in _arith.sqnorm(a)) if len(a) else 0.0


def status(p, f, config=None):
    """Boolean array, True where the vertex is live.

    Floating mode: a vertex is dead when its speed is at most ``eps_sign``
    times the largest speed in the field.  Exact mode: dead iff zero.
    """
    config = config or p.config
    a = _field(p, f)
    if _arith.is_exact(a):
        return np.array([any(x != 0 for x in row) for row in a], dtype=bool)
    speed = np.linalg.norm(a, axis=1)
    return speed > config.eps_sign * speed.max()


def _field(p, f):
    a = f.a if hasattr(f, "a") else np.asarray(f)
    if len(a) != p.n:
        raise DimensionMismatch(f"field has {len(a)} vectors, polytope has {p.n} vertices")
    if _arith.is_exact(a) != p.exact:
        a = _arith.coords(a, p.exact)
    return a


@dataclass(frozen=True, eq=False)
class OrientationGraph:
    polytope: object
    classes: np.ndarray
    projections: np.ndarray
    live: np.ndarray

    @property
    def dead(self):
        return ~self.live

    def edge_state(self, e):
        return EdgeState(EdgeClass(int(self.classes[e])), self.projections[e, 0],
                         self.projections[e, 1])

    def relative(self, e, apex):
        """OUT, IN or NONE for edge ``e`` seen from ``apex``."""
        c = int(self.classes[e])
        if c == _UNORIENTED:
            return NONE
        tail = self.polytope.edges[e, 0] if c == _FORWARD else self.polytope.edges[e, 1]
        return OUT if apex == tail else IN

    @cached_property
    def corner_table(self):
        """(F, 3) half-units, one per face corner, same order as ``faces``."""
        p = self.polytope
        ce = p.corner_edges
        sign = np.zeros(len(self.classes), dtype=np.int8)
        sign[self.classes == EdgeClass.FORWARD] = 1
        sign[self.classes == EdgeClass.BACKWARD] = -1
        apex = p.faces[:, :, None]
        from_tail = np.where(p.edges[ce, 0] == apex, 1, -1)
        rel = sign[ce] * from_tail
        r1, r2 = rel[..., 0], rel[..., 1]
        out = np.where(r1 != r2, 2, 0)
        out = np.where((r1 == 0) ^ (r2 == 0), 1, out)
        out = np.where((r1 == 0) & (r2 == 0), 2 * self.live[p.faces], out)
        return out.astype(np.int64)

    @cached_property
    def vertex_totals(self):
        return np.bincount(self.polytope.faces.ravel(), weights=self.corner_table.ravel(),
                           minlength=self.polytope.n).astype(np.int64)

    @cached_property
    def face_totals(self):
        return self.corner_table.sum(axis=1)


def classify(p, f, config=None):
    """Orient every edge from the sign of the endpoint projections.

    A projection ``(v_i - v_j, a_i)`` is zero when its magnitude is at most
    ``eps_sign * |v_i - v_j| * s`` with ``s`` the largest speed in the field
    (exact zero in exact mode).  Raises MixedSigns on the first edge whose
    two projections do not share a sign.
    """
    config = config or p.config
    a = _field(p, f)
    v = p.vertices
    i, j = p.edges[:, 0], p.edges[:, 1]
    d = v[i] - v[j]
    proj = np.stack([_arith.dot(d, a[i]), _arith.dot(d, a[j])], axis=1)
    if p.exact:
        sgn = np.vectorize(lambda x: (x > 0) - (x < 0), otypes=[np.int8])(proj)
    else:
        tol = config.eps_sign * np.linalg.norm(d, axis=1) * _velocity_scale(a)
        sgn = np.sign(proj).astype(np.int8)
        sgn[np.abs(proj) <= tol[:, None]] = 0
    bad = np.flatnonzero(sgn[:, 0] != sgn[:, 1])
    if len(bad):
        e = bad[0]
        raise MixedSigns(p.edges[e], proj[e, 0], proj[e, 1])
    classes = np.full(len(p.edges), EdgeClass.UNORIENTED, dtype=np.int8)
    classes[sgn[:, 0] < 0] = EdgeClass.FORWARD
    classes[sgn[:, 0] > 0] = EdgeClass.BACKWARD
    return OrientationGraph(p, classes, proj, status(p, a, config))


def corner_inversions(g, face, apex):
    p = g.polytope
    if apex not in p.faces[face]:
        raise ValueError(f"vertex {apex} is not on face {face}")
    e1, e2 = p.corner_index[(face, apex)]
    return corner_half_units(g.relative(e1, apex), g.relative(e2, apex), bool(g.live[apex]))


def triangle_inversions(g, face):
    return sum(corner_inversions(g, face, int(v)) for v in g.polytope.faces[face])


def vertex_inversions(g, v):
    return sum(corner_inversions(g, f, v) for f in g.polytope.vertex_faces[v])


def total_inversions(g):
    return int(g.corner_table.sum())


def lemma1_audit(g):
    """Faces with a live vertex but fewer than 2 half-units; empty means pass."""
    active = g.live[g.polytope.faces].any(axis=1)
    return np.flatnonzero(active & (g.face_totals < 2)).tolist()


def lemma2_audit(g):
    """Live vertices above 4 half-units or dead ones above 0; empty means pass."""
    vt = g.vertex_totals
    bad = (g.live & (vt > 4)) | (~g.live & (vt > 0))
    return np.flatnonzero(bad).tolist()


def enumerate_triangle_states():
    """All abstract triangle states consistent with the dead-vertex rule.

    Vertices 0, 1, 2; edges (0,1), (0,2), (1,2), each UNORIENTED, FORWARD
    (low to high) or BACKWARD.  Yields ``(live, classes, half_units)``.
    """
    tri_edges = ((0, 1), (0, 2), (1, 2))
    for live in product((False, True), repeat=3):
        for classes in product(tuple(EdgeClass), repeat=3):
            if any(c != EdgeClass.UNORIENTED and not (live[a] and live[b])
                   for c, (a, b) in zip(classes, tri_edges)):
                continue

            def rel(e, apex):
                c = classes[e]
                if c == EdgeClass.UNORIENTED:
                    return NONE
                tail = tri_edges[e][0] if c == EdgeClass.FORWARD else tri_edges[e][1]
                return OUT if apex == tail else IN

            total = 0
            for apex in range(3):
                es = [e for e, pair in enumerate(tri_edges) if apex in pair]
                total += corner_half_units(rel(es[0], apex), rel(es[1], apex), live[apex])
            yield live, classes, total


def lemma1_enumeration():
    """Minimum half-units over active and over inactive abstract triangles."""
    active, inactive = [], []
    for live, _, total in enumerate_triangle_states():
        (active if any(live) else inactive).append(total)
    return {"states": len(active) + len(inactive), "min_active": min(active),
            "min_inactive": min(inactive), "max_inactive": max(inactive)}


@dataclass(frozen=True)
class Component:
    """One connected piece H of the active subgraph."""

    vertices: tuple
    edges: tuple
    faces: tuple
    boundary_vertices: tuple
    boundary_edges: tuple
    t: int
    m: int
    k: int
    ell: int
    live: int

    @property
    def closed(self):
        return self.k == 0

    def identities(self):
        """Name -> (lhs, rhs) for each counting identity that should hold."""
        nv, ne = len(self.vertices), len(self.edges)
        out = {"|V'| = m + k": (nv, self.m + self.k),
               "2|E'| = k + 3t": (2 * ne, self.k + 3 * self.t)}
        if self.closed:
            out["t = 2m - 4"] = (self.t, 2 * self.m - 4)
            out["V' - E' + t = 2"] = (nv - ne + self.t, 2)
        else:
            out["t = 2m + k + 2l - 4"] = (self.t, 2 * self.m + self.k + 2 * self.ell - 4)
            out["V' - E' + (t + l) = 2"] = (nv - ne + self.t + self.ell, 2)
        return out

    def failed_identities(self):
        return {k: v for k, v in self.identities().items() if v[0] != v[1]}

    @property
    def lower_bound(self):
        """Inversions forced by the active triangles, in full inversions."""
        if not self.closed and self.k >= 3 and self.ell >= 1:
            return 2 * self.m + 1
        return self.t

    @property
    def upper_bound(self):
        return 2 * self.live

    def to_dict(self):
        return {"m": self.m, "k": self.k, "l": self.ell, "t": self.t, "closed": self.closed,
                "V": len(self.vertices), "E": len(self.edges), "live": self.live,
                "lower_bound": self.lower_bound, "upper_bound": self.upper_bound,
                "failed_identities": {k: list(v) for k, v in self.failed_identities().items()}}


@dataclass(frozen=True)
class ActiveDecomposition:
    components: list
    active_faces: tuple

    def consistent(self):
        return all(not c.failed_identities() for c in self.components)


def _components(n_nodes, pairs):
    if len(pairs) == 0:
        return np.arange(n_nodes)
    pairs = np.asarray(pairs)
    graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])),
                       shape=(n_nodes, n_nodes))
    return connected_components(graph, directed=False)[1]


def decompose_active(g, check=True):
    """Split the active subgraph into components and count m, k, l, t.

    Boundary vertices are the component's vertices that also lie on an
    inactive face; boundary edges are those lying in exactly one active
    face; l counts connected pieces of the boundary-edge graph.  With
    ``check`` a failed counting identity raises IdentityViolation.
    """
    p = g.polytope
    faces = p.faces
    active = g.live[faces].any(axis=1)
    act_ids = np.flatnonzero(active)
    on_inactive = np.zeros(p.n, dtype=bool)
    on_inactive[faces[~active].ravel()] = True

    edge_count = np.bincount(p.corner_edges[act_ids, :, 0].ravel(), minlength=len(p.edges))
    h_edges = np.flatnonzero(edge_count > 0)
    labels = _components(p.n, p.edges[h_edges])

    comps = []
    for lab in np.unique(labels[faces[act_ids, 0]]) if len(act_ids) else []:
        fids = act_ids[labels[faces[act_ids, 0]] == lab]
        eids = np.unique(p.corner_edges[fids, :, 0].ravel())
        vids = np.unique(faces[fids].ravel())
        bverts = vids[on_inactive[vids]]
        bedges = eids[edge_count[eids] == 1]
        if len(bedges):
            blab = _components(p.n, p.edges[bedges])
            ell = len(np.unique(blab[p.edges[bedges, 0]]))
        else:
            ell = 0
        comps.append(Component(
            vertices=tuple(vids.tolist()), edges=tuple(eids.tolist()),
            faces=tuple(fids.tolist()), boundary_vertices=tuple(bverts.tolist()),
            boundary_edges=tuple(bedges.tolist()), t=len(fids), m=len(vids) - len(bverts),
            k=len(bverts), ell=ell, live=int(g.live[vids].sum())))
    dec = ActiveDecomposition(comps, tuple(act_ids.tolist()))
    if check:
        for idx, c in enumerate(comps):
            failed = c.failed_identities()
            if failed:
                raise IdentityViolation(idx, failed)
            if g.live[list(c.boundary_vertices)].any():
                raise IdentityViolation(idx, {"boundary vertex is live": c.boundary_vertices})
    return dec


@dataclass
class AuditReport:
    """Outcome of the full certificate pipeline on one field.

    ``verdict`` is one of AllDead, Consistent, Inadmissible, Lemma1Violation,
    Lemma2Violation, CountingContradiction.  Counts are in half-units.
    """

    verdict: str
    detail: dict
    admissible: bool
    planted: bool
    base: tuple
    live: list = None
    vertex_half_units: list = None
    face_half_units: list = None
    total: int = None
    sum_faces: int = None
    sum_vertices: int = None
    lower_bound: int = None
    upper_bound: int = None
    components: list = field(default_factory=list)
    identity_violations: list = field(default_factory=list)

    @property
    def passed(self):
        return self.verdict in ("AllDead", "Consistent") and not self.identity_violations

    def to_dict(self):
        d = {"schema": 1, "verdict": self.verdict, "detail": self.detail,
             "admissible": self.admissible, "planted": self.planted, "base": list(self.base),
             "passed": self.passed, "live": self.live,
             "vertex_half_units": self.vertex_half_units,
             "face_half_units": self.face_half_units, "total": self.total,
             "sum_faces": self.sum_faces, "sum_vertices": self.sum_vertices,
             "bounds": {"lower": self.lower_bound, "upper": self.upper_bound},
             "components": [c.to_dict() for c in self.components],
             "identity_violations": self.identity_violations}
        return _jsonable(d)


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, (np.floating, float)):
        return float(x)
    if x is None or isinstance(x, (bool, int, str)):
        return x
    return str(x)


def global_audit(p, f, base=None, config=None):
    """Run classification, both lemma audits and the counting bookkeeping.

    Checks are reported in order: inadmissible edge, all dead, triangle bound,
    vertex bound, counting bounds.  Bounds are in half-units: the lower one sums
    each component's forced inversions, the upper one is 4 per live vertex.
    """
    config = config or p.config
    base = p.base if base is None else tuple(int(v) for v in base)
    try:
        g = classify(p, f, config)
    except MixedSigns as err:
        live = status(p, f, config)
        return AuditReport("Inadmissible", {"edge": list(err.edge), "p_i": err.p_i,
                                            "p_j": err.p_j},
                           admissible=False, planted=not live[list(base)].any(), base=base,
                           live=live.tolist())
    planted = not g.live[list(base)].any()
    report = AuditReport("Consistent", {}, admissible=True, planted=planted, base=base,
                         live=g.live.tolist(), vertex_half_units=g.vertex_totals.tolist(),
                         face_half_units=g.face_totals.tolist(), total=total_inversions(g),
                         sum_faces=int(g.face_totals.sum()),
                         sum_vertices=sum(vertex_inversions(g, v) for v in range(p.n)))
    if not g.live.any():
        report.verdict = "AllDead"
        return report
    dec = decompose_active(g, check=False)
    report.components = dec.components
    report.identity_violations = [{"component": i, "failed": c.failed_identities()}
                                  for i, c in enumerate(dec.components) if c.failed_identities()]
    report.lower_bound = 2 * sum(c.lower_bound for c in dec.components)
    report.upper_bound = 4 * int(g.live.sum())

    bad = lemma1_audit(g)
    if bad:
        f0 = bad[0]
        report.verdict = "Lemma1Violation"
        report.detail = {"face": f0, "half_units": int(g.face_totals[f0])}
        return report
    bad = lemma2_audit(g)
    if bad:
        v0 = bad[0]
        report.verdict = "Lemma2Violation"
        report.detail = {"vertex": v0, "half_units": int(g.vertex_totals[v0]),
                         "live": bool(g.live[v0]), "degree": int(p.degrees[v0])}
        return report
    over = [i for i, c in enumerate(dec.components) if c.lower_bound > c.upper_bound]
    if over:
        report.verdict = "CountingContradiction"
        report.detail = {"components": over}
    return report
