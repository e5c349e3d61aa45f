"""ASCII OFF meshes.

The reader accepts arbitrary polygon faces (extra per-face colour values
are ignored).  In exact mode coordinates are parsed straight into
Fractions, so ``0.1`` means one tenth and ``1/3`` is accepted as well.
"""

from fractions import Fraction
from pathlib import Path

from . import _arith
from .config import DEFAULT
from .errors import PolytopeError
from .polytope import GeneralPolytope, build_polytope, triangulate_faces


def _tokens(text):
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            yield line.split()


def parse_off(text, exact=False):
    lines = list(_tokens(text))
    if not lines or not lines[0][0].upper().endswith("OFF"):
        raise PolytopeError("missing OFF header")
    head = lines[0][1:]
    rest = lines[1:]
    if not head:
        if not rest:
            raise PolytopeError("missing counts line")
        head, rest = rest[0], rest[1:]
    try:
        nv, nf = int(head[0]), int(head[1])
    except (IndexError, ValueError) as err:
        raise PolytopeError(f"bad counts line: {head}") from err
    if len(rest) < nv + nf:
        raise PolytopeError(f"expected {nv} vertices and {nf} faces, file is short")
    try:
        if exact:
            verts = [[Fraction(x) for x in row[:3]] for row in rest[:nv]]
        else:
            verts = [[float(x) for x in row[:3]] for row in rest[:nv]]
        faces = []
        for row in rest[nv:nv + nf]:
            k = int(row[0])
            if len(row) < k + 1:
                raise PolytopeError(f"face line too short: {row}")
            faces.append(tuple(int(x) for x in row[1:k + 1]))
        vertices = _arith.coords(verts, exact)
    except ValueError as err:
        raise PolytopeError(f"cannot parse OFF body: {err}") from err
    return GeneralPolytope(vertices, tuple(faces))


def read_off(path, exact=False):
    return parse_off(Path(path).read_text(), exact)


def load_polytope(path, base=None, config=DEFAULT):
    """Read an OFF file and return a validated SimplicialPolytope.

    Non-triangular faces are fanned from their lowest vertex first.
    """
    g = read_off(path, config.exact)
    if g.is_simplicial():
        return build_polytope(g.vertices, g.faces, base=base, config=config)
    return triangulate_faces(g, base=base, config=config)


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def format_off(p):
    """OFF text for a simplicial polytope (triangles only)."""
    out = ["OFF", f"{p.n} {len(p.faces)} {len(p.edges)}"]
    out += [" ".join(_fmt(x) for x in row) for row in p.vertices]
    out += ["3 " + " ".join(str(int(v)) for v in tri) for tri in p.faces]
    return "\n".join(out) + "\n"


def write_off(p, path):
    Path(path).write_text(format_off(p))
