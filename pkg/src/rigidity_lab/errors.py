"""Exception hierarchy.

Every error raised on bad input derives from :class:`RigidityLabError`, so
callers (the CLI in particular) can map the whole family to one exit code.
"""


class RigidityLabError(Exception):
    pass


class PolytopeError(RigidityLabError, ValueError):
    """Input does not describe a valid closed simplicial surface."""


class NonManifold(PolytopeError):
    pass


class EulerViolation(PolytopeError):
    pass


class NotConvex(PolytopeError):
    pass


class DegenerateFace(PolytopeError):
    pass


class BaseNotAFace(PolytopeError):
    pass


class DegenerateInput(PolytopeError):
    """Point set is coplanar or collinear; no 3-dimensional hull exists."""


class BadParameter(RigidityLabError, ValueError):
    pass


class DimensionMismatch(RigidityLabError, ValueError):
    pass


class NumericalBreakdown(RigidityLabError, ArithmeticError):
    """A singular value sits too close to the rank threshold to call."""

    def __init__(self, message, singular_values=None, threshold=None):
        super().__init__(message)
        self.singular_values = singular_values
        self.threshold = threshold


class MixedSigns(RigidityLabError, ValueError):
    """Velocity field is outside the admissible set on some edge.

    Raised when the two endpoint projections onto an edge do not share a
    sign (including the case where exactly one of them is zero).
    """

    def __init__(self, edge, p_i, p_j):
        super().__init__(f"mixed signs on edge {tuple(edge)}: {p_i!r}, {p_j!r}")
        self.edge = tuple(int(v) for v in edge)
        self.p_i = p_i
        self.p_j = p_j


class IdentityViolation(RigidityLabError, AssertionError):
    def __init__(self, component, details):
        super().__init__(f"counting identity failed on component {component}: {details}")
        self.component = component
        self.details = details
