"""diophlab: certified Diophantine-approximation experiments.

Exact subspace machinery, best-approximation record scans, exponent
estimation, closed-form bound constants, and two escaping games that
construct matrices provably avoiding low rational subspaces.
"""

from .bounds import BoundSet, RootEnclosure, bound_constants, feasible_uniform_exponent, g_root
from .errors import (
    DegenerateBasisError,
    DiophlabError,
    EnumerationCapError,
    GameAbort,
    PrecisionError,
    ResourceCapError,
)
from .exactnum import ExactScalar, rat, sqrt_of
from .exponents import (
    BoundCheckReport,
    ExponentEstimate,
    SpanRankReport,
    exponent_bound_report,
    exponent_estimates,
    span_rank_tail,
)
from .kernels import KERNEL_NAME
from .polynomials import MultiPolynomial, RangeResult, parse_polynomial, polynomial_range
from .records import (
    BestApproxRecord,
    BestApproxSequence,
    bad_constant_estimate,
    best_approximations,
)
from .subspaces import (
    IrrationalityProfile,
    PluckerVector,
    RationalSubspace,
    SubspaceBasis,
    enumerate_rational_subspaces,
    intersection_dimension,
    irrationality_profile,
    iter_rational_subspaces,
    partial_irrationality_witness,
    plucker_coordinates,
    rational_dimension,
    subspace_basis,
)
from .targets import (
    AlgebraicSubspace,
    TargetMatrix,
    VectorTarget,
    algebraic_subspace,
    block_diagonal_subspace,
    matrix_subspace_basis,
    theta_from_basis,
)
from . import game
from .game import manifold_escape_haw, manifold_escape_schmidt

__version__ = "0.1.0"

__all__ = [
    "AlgebraicSubspace",
    "BestApproxRecord",
    "BestApproxSequence",
    "BoundCheckReport",
    "BoundSet",
    "DegenerateBasisError",
    "DiophlabError",
    "EnumerationCapError",
    "ExactScalar",
    "ExponentEstimate",
    "GameAbort",
    "IrrationalityProfile",
    "KERNEL_NAME",
    "MultiPolynomial",
    "PluckerVector",
    "PrecisionError",
    "RangeResult",
    "RationalSubspace",
    "ResourceCapError",
    "RootEnclosure",
    "SpanRankReport",
    "SubspaceBasis",
    "TargetMatrix",
    "VectorTarget",
    "algebraic_subspace",
    "bad_constant_estimate",
    "best_approximations",
    "block_diagonal_subspace",
    "bound_constants",
    "enumerate_rational_subspaces",
    "exponent_bound_report",
    "exponent_estimates",
    "feasible_uniform_exponent",
    "g_root",
    "game",
    "intersection_dimension",
    "irrationality_profile",
    "iter_rational_subspaces",
    "manifold_escape_haw",
    "manifold_escape_schmidt",
    "matrix_subspace_basis",
    "parse_polynomial",
    "partial_irrationality_witness",
    "plucker_coordinates",
    "polynomial_range",
    "rat",
    "rational_dimension",
    "span_rank_tail",
    "sqrt_of",
    "subspace_basis",
    "theta_from_basis",
    "__version__",
]
