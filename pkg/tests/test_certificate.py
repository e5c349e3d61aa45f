import json
from itertools import product
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rigidity_lab import (EXACT, EdgeClass, IdentityViolation, MixedSigns, OrientationGraph,
                          TrivialMotion, VelocityField, classify, corner_inversions,
                          decompose_active, generate, global_audit, is_infinitesimally_rigid,
                          kernel, lemma1_audit, lemma1_enumeration, lemma2_audit,
                          rigidity_matrix, status, to_dot, total_inversions,
                          triangle_inversions, trivial_field, vertex_inversions)
from rigidity_lab.certificate import IN, NONE, OUT, Component, corner_half_units

FIXTURE = json.loads((Path(__file__).parent / "fixtures" / "octahedron_translation.json").read_text())


def translation(p, t=(0, 0, 1)):
    return trivial_field(TrivialMotion(translation=t), p)


def graph_from_status(p, live):
    """Orientation graph with every edge unoriented; only statuses matter."""
    return OrientationGraph(p, np.zeros(len(p.edges), dtype=np.int8),
                            np.zeros((len(p.edges), 2)), np.asarray(live, dtype=bool))


# status ------------------------------------------------------------------

def test_status_examples(octahedron, flat_octahedron):
    assert not status(octahedron, VelocityField.zeros(6)).any()
    assert status(octahedron, translation(octahedron)).all()
    w = is_infinitesimally_rigid(flat_octahedron).witness
    assert np.flatnonzero(status(flat_octahedron, w)).tolist() == [6]


# classify ----------------------------------------------------------------

def test_zero_field_all_unoriented(octahedron):
    g = classify(octahedron, VelocityField.zeros(6))
    assert (g.classes == EdgeClass.UNORIENTED).all()


def test_translation_orientation_rule(octahedron):
    g = classify(octahedron, translation(octahedron))
    v = octahedron.vertices
    for e, (i, j) in enumerate(octahedron.edges):
        p = (v[i] - v[j]) @ np.array([0, 0, 1.0])
        if p < 0:
            assert g.classes[e] == EdgeClass.FORWARD
            assert g.relative(e, i) == OUT and g.relative(e, j) == IN
        elif p > 0:
            assert g.classes[e] == EdgeClass.BACKWARD
        else:
            assert g.classes[e] == EdgeClass.UNORIENTED
    assert (g.classes != EdgeClass.UNORIENTED).sum() == FIXTURE["oriented_edges"]


def test_mixed_signs(octahedron):
    a = np.zeros((6, 3))
    a[0] = [1, 0, 0]  # vertex 0 moves, its neighbours do not: exactly one zero
    with pytest.raises(MixedSigns) as info:
        classify(octahedron, VelocityField(a))
    assert 0 in info.value.edge


def test_mixed_signs_opposite(tetrahedron):
    rng = np.random.default_rng(1)
    for _ in range(50):
        f = VelocityField(rng.standard_normal((4, 3)))
        try:
            g = classify(tetrahedron, f)
        except MixedSigns as err:
            assert (err.p_i > 0) != (err.p_j > 0) or err.p_i == 0 or err.p_j == 0
        else:
            s = np.sign(g.projections)
            assert (s[:, 0] == s[:, 1]).all()


def test_dead_vertex_edges_unoriented(flat_octahedron):
    w = is_infinitesimally_rigid(flat_octahedron).witness
    g = classify(flat_octahedron, w)
    dead = ~g.live
    for e, (i, j) in enumerate(flat_octahedron.edges):
        if dead[i] or dead[j]:
            assert g.classes[e] == EdgeClass.UNORIENTED


def test_classify_exact(int_octahedron):
    f = trivial_field(TrivialMotion((0, 0, 1), (0, 0, 0)), int_octahedron)
    g = classify(int_octahedron, f, EXACT)
    assert g.vertex_totals.tolist() == FIXTURE["vertex_half_units"]


# corners and totals ------------------------------------------------------

def test_corner_table():
    assert corner_half_units(NONE, NONE, True) == 2
    assert corner_half_units(NONE, NONE, False) == 0
    assert corner_half_units(IN, NONE, True) == 1
    assert corner_half_units(NONE, OUT, True) == 1
    assert corner_half_units(IN, OUT, True) == 2
    assert corner_half_units(IN, IN, True) == 0
    assert corner_half_units(OUT, OUT, True) == 0


def test_octahedron_translation_fixture(octahedron):
    g = classify(octahedron, translation(octahedron))
    assert [vertex_inversions(g, v) for v in range(6)] == FIXTURE["vertex_half_units"]
    assert g.vertex_totals.tolist() == FIXTURE["vertex_half_units"]
    assert [triangle_inversions(g, f) for f in range(8)] == [FIXTURE["face_half_units"]] * 8
    assert total_inversions(g) == FIXTURE["total_half_units"]


def test_scalar_and_vector_corners_agree(icosahedron):
    rng = np.random.default_rng(3)
    m = rigidity_matrix(icosahedron)
    basis = kernel(m).basis
    for _ in range(5):
        f = VelocityField(sum(rng.standard_normal() * b.a for b in basis))
        g = classify(icosahedron, f)
        for fidx, tri in enumerate(icosahedron.faces):
            for k, apex in enumerate(tri):
                assert corner_inversions(g, fidx, int(apex)) == g.corner_table[fidx, k]


def test_corner_requires_apex_on_face(octahedron):
    g = classify(octahedron, translation(octahedron))
    off = next(v for v in range(6) if v not in octahedron.faces[0])
    with pytest.raises(ValueError):
        corner_inversions(g, 0, off)


def test_flat_witness_counts(flat_octahedron):
    w = is_infinitesimally_rigid(flat_octahedron).witness
    g = classify(flat_octahedron, w)
    deg = int(flat_octahedron.degrees[6])
    assert vertex_inversions(g, 6) == 2 * deg == 6
    assert total_inversions(g) == 6


def test_zero_field_total(octahedron):
    assert total_inversions(classify(octahedron, VelocityField.zeros(6))) == 0


# triangle bound ----------------------------------------------------------

def independent_triangle_states():
    """Enumerate abstract triangle states without touching the package.

    An orientation of edge {a, b} is stored as the ordered pair (tail, head).
    """
    verts = (0, 1, 2)
    pairs = ((0, 1), (0, 2), (1, 2))
    results = []
    for live in product((False, True), repeat=3):
        options = []
        for a, b in pairs:
            opts = [None]
            if live[a] and live[b]:
                opts += [(a, b), (b, a)]
            options.append(opts)
        for orient in product(*options):
            total = 0
            for x in verts:
                dirs = []
                for (a, b), o in zip(pairs, orient):
                    if x in (a, b):
                        dirs.append(None if o is None else ("out" if o[0] == x else "in"))
                d1, d2 = dirs
                if d1 is None and d2 is None:
                    total += 2 if live[x] else 0
                elif d1 is None or d2 is None:
                    total += 1
                else:
                    total += 2 if d1 != d2 else 0
            results.append((live, total))
    return results


def test_lemma1_enumeration_matches_independent_count():
    states = independent_triangle_states()
    active = [t for live, t in states if any(live)]
    inactive = [t for live, t in states if not any(live)]
    got = lemma1_enumeration()
    assert got["states"] == len(states) == 40
    assert got["min_active"] == min(active) == 2
    assert got["min_inactive"] == min(inactive) == 0


def test_lemma1_audit_examples(octahedron):
    assert lemma1_audit(classify(octahedron, VelocityField.zeros(6))) == []
    g = classify(octahedron, translation(octahedron))
    assert lemma1_audit(g) == []
    assert (g.face_totals == 2).all()


def test_lemma1_tight_on_transitive_triangle(octahedron):
    # every vertex live, face 0 oriented source -> middle -> sink
    a, b, c = (int(x) for x in octahedron.faces[0])
    classes = np.zeros(12, dtype=np.int8)
    for tail, head in ((a, b), (a, c), (b, c)):
        e = octahedron.edge_id(tail, head)
        i, _ = octahedron.edges[e]
        classes[e] = EdgeClass.FORWARD if i == tail else EdgeClass.BACKWARD
    g = OrientationGraph(octahedron, classes, np.zeros((12, 2)), np.ones(6, dtype=bool))
    assert triangle_inversions(g, 0) == 2
    assert lemma1_audit(g) == []


# vertex bound ------------------------------------------------------------

def test_lemma2_rotation_icosahedron(icosahedron):
    f = trivial_field(TrivialMotion(angular=(0, 0, 1)), icosahedron)
    assert lemma2_audit(classify(icosahedron, f)) == []


def test_lemma2_translation_octahedron_tight(octahedron):
    g = classify(octahedron, translation(octahedron))
    assert lemma2_audit(g) == []
    assert sorted(g.vertex_totals.tolist()) == [0, 0, 4, 4, 4, 4]


def test_lemma2_flat_vertex_violation(flat_octahedron):
    w = is_infinitesimally_rigid(flat_octahedron).witness
    assert lemma2_audit(classify(flat_octahedron, w)) == [6]


# decomposition -----------------------------------------------------------

def test_decompose_translation_closed(octahedron):
    dec = decompose_active(classify(octahedron, translation(octahedron)))
    (c,) = dec.components
    assert (c.m, c.k, c.ell, c.t, c.closed) == (6, 0, 0, 8, True)
    assert c.t == 2 * c.m - 4


def test_decompose_single_live_apex(octahedron):
    apex = 4
    live = np.zeros(6, dtype=bool)
    live[apex] = True
    (c,) = decompose_active(graph_from_status(octahedron, live)).components
    assert (c.m, c.k, c.ell, c.t) == (1, 4, 1, 4)
    assert c.t == 2 * 1 + 4 + 2 - 4


@pytest.mark.parametrize("name,params", [("octahedron", ()), ("icosahedron", ()),
                                         ("bipyramid", (7,)), ("random_sphere", (30,))])
def test_decompose_baseline_scenario(name, params):
    p = generate(name, *params, seed=5)
    live = np.ones(p.n, dtype=bool)
    live[list(p.base)] = False
    (c,) = decompose_active(graph_from_status(p, live)).components
    n = p.n
    assert (c.k, c.ell, c.m, c.t) == (3, 1, n - 3, 2 * n - 5)


def test_decompose_two_components(icosahedron):
    # two antipodal live vertices with disjoint stars
    p = icosahedron
    v0 = 0
    far = int(np.argmin(p.vertices @ p.vertices[v0]))
    live = np.zeros(p.n, dtype=bool)
    live[[v0, far]] = True
    dec = decompose_active(graph_from_status(p, live))
    assert len(dec.components) == 2
    for c in dec.components:
        assert (c.m, c.k, c.ell, c.t) == (1, 5, 1, 5)


def test_decompose_opposite_poles_is_closed(octahedron):
    # the stars of +x and -x cover the whole surface
    live = np.zeros(6, dtype=bool)
    live[[0, 1]] = True
    (c,) = decompose_active(graph_from_status(octahedron, live)).components
    assert c.closed and (c.m, c.t) == (6, 8)


@pytest.mark.parametrize("name", ["octahedron", "icosahedron"])
def test_identities_hold_for_every_live_set(name):
    p = generate(name)
    rng = np.random.default_rng(0)
    for _ in range(300):
        live = rng.random(p.n) < rng.random()
        for c in decompose_active(graph_from_status(p, live), check=False).components:
            assert not c.failed_identities()


def test_pinched_boundary_breaks_identities():
    # opposite equator vertices of the hexagonal bipyramid: both poles sit on
    # two boundary cycles at once, so boundary edges outnumber boundary vertices
    p = generate("bipyramid", 6)
    live = np.zeros(p.n, dtype=bool)
    live[[0, 3]] = True
    g = graph_from_status(p, live)
    (c,) = decompose_active(g, check=False).components
    assert (c.m, c.k, c.ell, c.t) == (2, 6, 1, 8)
    assert len(c.boundary_edges) == 8
    assert "2|E'| = k + 3t" in c.failed_identities()
    with pytest.raises(IdentityViolation):
        decompose_active(g)


def test_failed_identity_is_reported():
    c = Component(vertices=(0, 1, 2, 3), edges=tuple(range(6)), faces=(0, 1, 2),
                  boundary_vertices=(1, 2, 3), boundary_edges=(3, 4, 5), t=3, m=1, k=3,
                  ell=2, live=1)
    failed = c.failed_identities()
    assert "t = 2m + k + 2l - 4" in failed
    assert IdentityViolation(0, failed).details == failed


def test_decompose_all_dead(octahedron):
    dec = decompose_active(graph_from_status(octahedron, np.zeros(6, dtype=bool)))
    assert dec.components == []


# global audit ------------------------------------------------------------

def test_audit_zero_field(icosahedron):
    rep = global_audit(icosahedron, VelocityField.zeros(12))
    assert rep.verdict == "AllDead" and rep.passed and rep.planted


def test_audit_translation(octahedron):
    rep = global_audit(octahedron, translation(octahedron))
    assert rep.verdict == "Consistent"
    assert rep.admissible and not rep.planted
    assert rep.total == rep.sum_faces == rep.sum_vertices == 16
    assert rep.lower_bound == 2 * 8 and rep.upper_bound == 4 * 6


def test_audit_planted_kernel_is_all_dead(icosahedron):
    v = is_infinitesimally_rigid(icosahedron)
    assert v.full.dimension == 6 and v.planted.dimension == 0
    # the only planted field is zero
    assert global_audit(icosahedron, VelocityField.zeros(12)).verdict == "AllDead"


def test_audit_flat_witness(flat_octahedron):
    w = is_infinitesimally_rigid(flat_octahedron).witness
    rep = global_audit(flat_octahedron, w)
    assert rep.verdict == "Lemma2Violation"
    assert rep.detail["vertex"] == 6 and rep.detail["half_units"] == 6
    assert rep.admissible and rep.planted
    (c,) = rep.components
    assert (c.m, c.k, c.ell, c.t) == (1, 3, 1, 3)
    assert not rep.passed


def test_audit_inadmissible(octahedron):
    a = np.zeros((6, 3))
    a[0] = [1, 0, 0]
    rep = global_audit(octahedron, VelocityField(a))
    assert rep.verdict == "Inadmissible" and not rep.admissible
    assert 0 in rep.detail["edge"]


def test_audit_report_json(flat_octahedron):
    w = is_infinitesimally_rigid(flat_octahedron).witness
    d = json.loads(json.dumps(global_audit(flat_octahedron, w).to_dict()))
    assert d["schema"] == 1 and d["verdict"] == "Lemma2Violation"
    assert d["vertex_half_units"][6] == 6
    assert d["components"][0]["k"] == 3
    assert d["bounds"] == {"lower": 6, "upper": 4}


def test_audit_exact(int_octahedron):
    rep = global_audit(int_octahedron, VelocityField.zeros(6, exact=True), config=EXACT)
    assert rep.verdict == "AllDead"


# DOT ---------------------------------------------------------------------

def test_dot_zero_field(octahedron):
    dot = to_dot(classify(octahedron, VelocityField.zeros(6)))
    assert dot.count("dir=none") == 12
    assert dot.count("fillcolor=black") == 6


def test_dot_translation(octahedron):
    dot = to_dot(classify(octahedron, translation(octahedron)))
    arcs = [l for l in dot.splitlines() if "->" in l and "dir=none" not in l]
    assert len(arcs) == 8 and dot.count("dir=none") == 4


def test_dot_flat_witness(flat_octahedron):
    w = is_infinitesimally_rigid(flat_octahedron).witness
    dot = to_dot(classify(flat_octahedron, w))
    lines = dot.splitlines()
    assert "  6 [style=solid];" in lines
    assert dot.count("fillcolor=black") == 6
    assert sum(1 for l in lines if "dir=none" in l and " 6 " in l + " ") == 3


# properties --------------------------------------------------------------

POLYS = ["tetrahedron", "octahedron", "icosahedron", "bipyramid"]


@settings(max_examples=40, deadline=None)
@given(name=st.sampled_from(POLYS), seed=st.integers(0, 2 ** 32 - 1))
def test_kernel_fields_always_admissible(name, seed):
    p = generate(name, 5) if name == "bipyramid" else generate(name)
    basis = kernel(rigidity_matrix(p)).basis
    rng = np.random.default_rng(seed)
    f = VelocityField(sum(rng.standard_normal() * b.a for b in basis))
    g = classify(p, f)
    for e, (i, j) in enumerate(p.edges):
        if not (g.live[i] and g.live[j]):
            assert g.classes[e] == EdgeClass.UNORIENTED
    assert int(g.face_totals.sum()) == int(g.vertex_totals.sum()) == total_inversions(g)
    assert sum(vertex_inversions(g, v) for v in range(p.n)) == total_inversions(g)
    assert lemma1_audit(g) == [] and lemma2_audit(g) == []
    for c in decompose_active(g).components:
        assert not c.failed_identities()


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10 ** 6), n=st.integers(6, 40))
def test_rigid_motion_audits_on_random_polytopes(seed, n):
    p = generate("random_sphere", n, seed=seed)
    rng = np.random.default_rng(seed)
    f = trivial_field(TrivialMotion(tuple(rng.standard_normal(3)),
                                    tuple(rng.standard_normal(3))), p)
    rep = global_audit(p, f)
    assert rep.admissible and rep.verdict == "Consistent"
    assert rep.total == rep.sum_faces == rep.sum_vertices
