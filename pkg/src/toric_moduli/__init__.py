"""Exact polyhedral invariants and Kodaira-Spencer kernel bases for lattice polytopes."""

from .fine import (
    CanonicalClosureResult,
    FineInteriorResult,
    NoFineInteriorError,
    StabilityCertificate,
    canonical_closure,
    candidate_normals,
    fine_interior,
    is_cartier,
    support,
)
from .kodaira import (
    DegenerateCoefficientError,
    DegenerateSupportError,
    KernelReport,
    NotARootError,
    SubfamilyError,
    SubfamilyReport,
    generic_sample,
    height,
    kernel_basis,
    kernel_intersection_check,
    subfamily_analysis,
    toric_derivative,
    w_poly,
)
from .laurent import LaurentPolynomial, format_rational, parse_rational
from .polytope import (
    EmptyPolytopeError,
    Halfspace,
    LatticePolytope,
    RationalHPolytope,
    UnboundedPolytopeError,
    divisor_polytope,
    faces,
    h_polytope,
    hull,
    interior_lattice_points,
    lattice_points,
    min_support,
    newton_polytope,
)
from .roots import RaySet, Root, RootPolytopeUnboundedError, root_set_difference, roots

__version__ = "0.1.0"
