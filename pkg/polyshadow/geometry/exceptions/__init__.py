from .base import (
    DimensionMismatch,
    DimensionUnsupported,
    EmptyInput,
    FaceNotInPolytope,
    NotIsotropicInput,
    NotSymmetric,
    OriginOutside,
    PointNotInPolytope,
    PolyshadowError,
    PolyshadowValidationError,
    PreconditionViolated,
)
from .computation import (
    DegenerateBody,
    DegenerateHull,
    DegeneratePolytope,
    DegenerateProjection,
    DegenerateSimplex,
    EmptySection,
    InfeasibleProgram,
    NonGenericDirection,
    PolyshadowComputationError,
    RankDeficient,
    RetriesExhausted,
    exit_code_for,
)

__all__ = [
    'PolyshadowError',
    'PolyshadowValidationError',
    'EmptyInput',
    'DimensionMismatch',
    'FaceNotInPolytope',
    'PointNotInPolytope',
    'OriginOutside',
    'NotSymmetric',
    'NotIsotropicInput',
    'PreconditionViolated',
    'DimensionUnsupported',
    'PolyshadowComputationError',
    'DegenerateSimplex',
    'DegeneratePolytope',
    'DegenerateBody',
    'DegenerateProjection',
    'NonGenericDirection',
    'RetriesExhausted',
    'RankDeficient',
    'DegenerateHull',
    'EmptySection',
    'InfeasibleProgram',
    'exit_code_for',
]
