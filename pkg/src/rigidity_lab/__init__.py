"""Infinitesimal rigidity of simplicial convex polytopes.

Numerical rigidity checks (rigidity matrix, planted kernels) side by side
with the combinatorial inversion-counting certificate.
"""

__version__ = "0.1.0"

from .config import ToleranceConfig, DEFAULT, EXACT
from .errors import (RigidityLabError, PolytopeError, NonManifold, EulerViolation,
                     NotConvex, DegenerateFace, BaseNotAFace, DegenerateInput, BadParameter,
                     DimensionMismatch, NumericalBreakdown, MixedSigns, IdentityViolation)
from .polytope import (GeneralPolytope, SimplicialPolytope, build_polytope,
                       triangulate_faces, validate_general, surface_area)
from .hull import convex_hull, hull_polygons
from .generators import generate, add_flat_vertex
from .numeric import (VelocityField, RigidityMatrix, MotionBasis, TrivialMotion,
                      RigidityVerdict, rigidity_matrix, residuals, kernel, plant,
                      is_infinitesimally_rigid, trivial_field, edge_length_derivative_fd)
from .certificate import (EdgeClass, OrientationGraph, ActiveDecomposition, Component,
                          AuditReport, status, classify, corner_inversions,
                          triangle_inversions, vertex_inversions, total_inversions,
                          lemma1_audit, lemma2_audit, lemma1_enumeration, decompose_active,
                          global_audit)
from .offio import parse_off, read_off, load_polytope, format_off, write_off
from .export import to_dot
from .fuzz import fuzz
