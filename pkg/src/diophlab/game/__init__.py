"""Two escaping games on shrinking balls, with exact move validation,
certified polynomial escapes, and matrix generation built on them.
"""

from .balls import (
    Ball,
    Certificate,
    EscapeOutcome,
    GameTranscript,
    HawConfig,
    HyperplaneNeighborhood,
    Move,
    SchmidtConfig,
    Verdict,
    validate_haw_move,
    validate_schmidt_move,
)
from .engine import (
    HalfspaceEscape,
    HalfspaceResult,
    HawPlay,
    SchmidtPlay,
    manifold_escape_haw,
    manifold_escape_schmidt,
    schmidt_escape_halfspace,
)
from .manifolds import (
    GeneratedMatrix,
    ManifoldCertificate,
    determinant_manifold,
    generate_irrational_matrix,
    manifold_polynomial,
)
from .opponents import (
    CenterCopy,
    DeepSide,
    Hugging,
    LazyMinimal,
    MoveContext,
    RandomHaw,
    RandomSchmidt,
    Retreating,
)

__all__ = [
    "Ball",
    "Certificate",
    "CenterCopy",
    "DeepSide",
    "EscapeOutcome",
    "GameTranscript",
    "GeneratedMatrix",
    "HalfspaceEscape",
    "HalfspaceResult",
    "HawConfig",
    "HawPlay",
    "Hugging",
    "HyperplaneNeighborhood",
    "LazyMinimal",
    "ManifoldCertificate",
    "Move",
    "MoveContext",
    "RandomHaw",
    "RandomSchmidt",
    "Retreating",
    "SchmidtConfig",
    "SchmidtPlay",
    "Verdict",
    "determinant_manifold",
    "generate_irrational_matrix",
    "manifold_escape_haw",
    "manifold_escape_schmidt",
    "manifold_polynomial",
    "schmidt_escape_halfspace",
    "validate_haw_move",
    "validate_schmidt_move",
]
