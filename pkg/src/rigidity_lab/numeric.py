"""Rigidity matrix, infinitesimal motions and the rigidity decision."""

from dataclasses import dataclass
from fractions import Fraction
import json

import numpy as np

from . import _arith, exact as _exact
from .config import DEFAULT
from .errors import BaseNotAFace, DimensionMismatch, NumericalBreakdown


@dataclass(frozen=True, eq=False)
class VelocityField:
    """One velocity 3-vector per vertex, stored as an (n, 3) array."""

    a: np.ndarray

    def __post_init__(self):
        if self.a.ndim != 2 or self.a.shape[1] != 3:
            raise DimensionMismatch(f"velocity array must be (n, 3), got {self.a.shape}")

    @classmethod
    def from_array(cls, a, exact=False):
        return cls(_arith.coords(a, exact))

    @classmethod
    def zeros(cls, n, exact=False):
        return cls(_arith.zeros((n, 3), exact))

    @property
    def n(self):
        return len(self.a)

    @property
    def exact(self):
        return _arith.is_exact(self.a)

    def flat(self):
        return self.a.reshape(-1)

    def norm(self):
        return float(np.sqrt(float(_arith.sqnorm(self.flat()))))

    def to_dict(self):
        if self.exact:
            rows = [[_json_number(x) for x in row] for row in self.a]
        else:
            rows = self.a.tolist()
        return {"n": self.n, "a": rows}

    @classmethod
    def from_dict(cls, data, exact=False):
        a = data["a"]
        if "n" in data and int(data["n"]) != len(a):
            raise DimensionMismatch(f"field declares n={data['n']} but lists {len(a)} vectors")
        if not a:
            raise DimensionMismatch("empty velocity field")
        return cls.from_array(a, exact)

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text, exact=False):
        if exact:
            data = json.loads(text, parse_float=Fraction, parse_int=Fraction)
        else:
            data = json.loads(text)
        return cls.from_dict(data, exact)


def _json_number(x):
    x = Fraction(x)
    if x.denominator == 1:
        return int(x)
    return str(x)


@dataclass(frozen=True, eq=False)
class RigidityMatrix:
    """Edge constraint matrix.

    Row ``r`` belongs to ``edges[r] = (i, j)``; column block ``b`` belongs to
    polytope vertex ``vertex_ids[b]``.  A planted matrix simply lists fewer
    vertex blocks.
    """

    matrix: np.ndarray
    edges: np.ndarray
    vertex_ids: tuple
    n: int

    @property
    def shape(self):
        return self.matrix.shape

    @property
    def exact(self):
        return _arith.is_exact(self.matrix)

    @property
    def planted(self):
        return len(self.vertex_ids) < self.n

    def norm(self):
        """Frobenius norm, as a float."""
        return float(np.sqrt(float(_arith.sqnorm(self.matrix.reshape(-1)))))


def rigidity_matrix(p):
    n, edges = p.n, p.edges
    m = _arith.zeros((len(edges), 3 * n), p.exact)
    rows = np.arange(len(edges))
    d = p.vertices[edges[:, 0]] - p.vertices[edges[:, 1]]
    for c in range(3):
        m[rows, 3 * edges[:, 0] + c] = d[:, c]
        m[rows, 3 * edges[:, 1] + c] = -d[:, c]
    return RigidityMatrix(m, edges, tuple(range(n)), n)


def plant(m, base):
    """Drop the column blocks of the three base vertices."""
    base = tuple(int(v) for v in base)
    if len(set(base)) != 3:
        raise BaseNotAFace(f"base vertices must be distinct, got {base}")
    keep = [b for b, v in enumerate(m.vertex_ids) if v not in base]
    cols = [3 * b + c for b in keep for c in range(3)]
    return RigidityMatrix(m.matrix[:, cols], m.edges, tuple(m.vertex_ids[b] for b in keep), m.n)


def _restrict(m, f):
    a = f.a if isinstance(f, VelocityField) else np.asarray(f)
    if a.ndim == 1:
        a = a.reshape(-1, 3)
    if len(a) == len(m.vertex_ids):
        return a
    if len(a) == m.n:
        return a[list(m.vertex_ids)]
    raise DimensionMismatch(
        f"field has {len(a)} vectors; matrix expects {len(m.vertex_ids)} (or {m.n})")


def residuals(m, f):
    """Per-edge value of (v_i - v_j, a_i - a_j).

    ``f`` may list one vector per column block, or one per polytope vertex;
    in the latter case a planted matrix reads only its free vertices.
    """
    a = _restrict(m, f)
    if _arith.is_exact(m.matrix) != _arith.is_exact(a):
        a = _arith.coords(a, _arith.is_exact(m.matrix))
    return m.matrix @ a.reshape(-1)


@dataclass(frozen=True, eq=False)
class MotionBasis:
    """Kernel of a rigidity matrix.

    ``basis`` holds full-length fields (zeros on planted vertices).  In
    floating mode the basis is orthonormal and ``singular_value_gap`` is the
    smallest retained singular value over the largest discarded one; see
    :func:`kernel` for how a missing discarded value is handled.
    """

    dimension: int
    basis: list
    singular_values: np.ndarray = None
    threshold: float = None
    singular_value_gap: float = None
    exact: bool = False

    def to_dict(self):
        return {"schema": 1, "dimension": self.dimension,
                "singular_value_gap": self.singular_value_gap,
                "basis": [f.to_dict() for f in self.basis]}


def _expand(m, vec, exact):
    out = _arith.zeros((m.n, 3), exact)
    out[list(m.vertex_ids)] = np.asarray(vec, dtype=object if exact else float).reshape(-1, 3)
    return VelocityField(out)


def kernel(m, config=None):
    """Infinitesimal motions of ``m``.

    Floating mode: SVD, rank = number of singular values above
    ``eps_rank * sigma_max``.  Raises NumericalBreakdown when any singular
    value lies within a factor 10 of that cutoff.  When nothing is discarded
    (kernel comes only from having more columns than rows) the gap is taken
    against the round-off floor ``sigma_max * machine_eps * max(shape)``.

    Exact mode: rational Gauss-Jordan elimination, no tolerances.
    """
    use_exact = m.exact if config is None else config.exact
    rows, ncols = m.shape
    if use_exact:
        mat = m.matrix if m.exact else _arith.coords(m.matrix, True, ncols)
        null = _exact.nullspace(mat.tolist(), ncols)
        return MotionBasis(len(null), [_expand(m, v, True) for v in null], exact=True)

    eps_rank = (config or DEFAULT).eps_rank
    mat = _arith.to_float(m.matrix)
    if ncols == 0:
        return MotionBasis(0, [], np.zeros(0), 0.0, None)
    _, s, vt = np.linalg.svd(mat, full_matrices=True)
    smax = float(s[0]) if len(s) else 0.0
    thr = eps_rank * smax
    ambiguous = s[(s > thr / 10) & (s < thr * 10)]
    if smax > 0 and len(ambiguous):
        raise NumericalBreakdown(
            f"singular value(s) {ambiguous.tolist()} within 10x of cutoff {thr:.3g}",
            singular_values=s, threshold=thr)
    r = int((s > thr).sum()) if smax > 0 else 0
    null = vt[r:]
    if r == 0:
        gap = None
    else:
        floor = smax * np.finfo(float).eps * max(rows, ncols)
        largest_dropped = float(s[r]) if r < len(s) else 0.0
        gap = float(s[r - 1]) / max(largest_dropped, floor)
    if len(null):
        res = np.linalg.norm(mat @ null.T, axis=0)
        if res.max() > eps_rank * np.linalg.norm(mat):
            raise NumericalBreakdown(f"kernel residual {res.max():.3g} above tolerance",
                                     singular_values=s, threshold=thr)
    return MotionBasis(len(null), [_expand(m, v, False) for v in null], s, thr, gap)


@dataclass(frozen=True, eq=False)
class RigidityVerdict:
    rigid: bool
    witness: VelocityField
    full: MotionBasis
    planted: MotionBasis
    base: tuple


def _normalize_witness(f):
    flat = f.flat()
    k = int(np.argmax([abs(float(x)) for x in flat]))
    if f.exact:
        # unit Euclidean norm is irrational in general; scale max entry to 1
        return VelocityField(f.a / flat[k])
    scale = np.linalg.norm(flat) * np.sign(flat[k])
    return VelocityField(f.a / scale)


def is_infinitesimally_rigid(p, base=None, config=None):
    """Decide whether every planted infinitesimal motion vanishes.

    Returns a RigidityVerdict with both the full and the planted kernels;
    when flexible, ``witness`` is a normalized planted flex (unit norm in
    floating mode, largest entry 1 in exact mode).
    """
    config = config or p.config
    base = p.base if base is None else tuple(int(v) for v in base)
    if p.face_of(base) is None:
        raise BaseNotAFace(f"{base} is not a face")
    m = rigidity_matrix(p)
    full = kernel(m, config)
    planted = kernel(plant(m, base), config)
    witness = None if planted.dimension == 0 else _normalize_witness(planted.basis[0])
    return RigidityVerdict(planted.dimension == 0, witness, full, planted, base)


@dataclass(frozen=True)
class TrivialMotion:
    translation: tuple = (0.0, 0.0, 0.0)
    angular: tuple = (0.0, 0.0, 0.0)


def trivial_field(tm, p):
    """Velocity a_i = t + w x v_i of an ambient rigid motion."""
    t = _arith.coords([tm.translation], p.exact)[0]
    w = _arith.coords([tm.angular], p.exact)[0]
    return VelocityField(t[None, :] + np.cross(w[None, :], p.vertices))


def edge_length_derivative_fd(p, f, h):
    """Central difference of the squared edge lengths along v + t a, at t = 0.

    Squared length is quadratic in t, so the estimate equals
    2 (v_i - v_j, a_i - a_j) up to round-off.
    """
    if not h > 0:
        raise ValueError(f"step must be positive, got {h!r}")
    if f.n != p.n:
        raise DimensionMismatch(f"field has {f.n} vectors, polytope has {p.n} vertices")
    v = _arith.to_float(p.vertices)
    a = _arith.to_float(f.a)
    i, j = p.edges[:, 0], p.edges[:, 1]
    d, e = v[i] - v[j], a[i] - a[j]
    plus = _arith.sqnorm(d + h * e)
    minus = _arith.sqnorm(d - h * e)
    return (plus - minus) / (2 * h)
