"""
Computational convex geometry of polytope projections.

Exact or floating-point hulls, normal cones, shadow tilings of projections, isotropy
constants, Steiner symmetrization and randomized projection experiments.
"""

from typing import TYPE_CHECKING, Any

from .context import Context
from .exceptions import (
    DegenerateBody,
    DegenerateHull,
    DegeneratePolytope,
    DegenerateProjection,
    DegenerateSimplex,
    DimensionMismatch,
    DimensionUnsupported,
    EmptyInput,
    EmptySection,
    FaceNotInPolytope,
    InfeasibleProgram,
    NonGenericDirection,
    NotIsotropicInput,
    NotSymmetric,
    OriginOutside,
    PointNotInPolytope,
    PolyshadowComputationError,
    PolyshadowError,
    PolyshadowValidationError,
    PreconditionViolated,
    RankDeficient,
    RetriesExhausted,
)

if TYPE_CHECKING:
    from .toolkit import Toolkit

__all__ = [
    'Toolkit',
    'Context',
    'PolyshadowError',
    'PolyshadowValidationError',
    'PolyshadowComputationError',
    'EmptyInput',
    'DimensionMismatch',
    'FaceNotInPolytope',
    'PointNotInPolytope',
    'OriginOutside',
    'NotSymmetric',
    'NotIsotropicInput',
    'PreconditionViolated',
    'DimensionUnsupported',
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
]


def __getattr__(name: str) -> Any:
    if name == 'Toolkit':
        from .toolkit import Toolkit

        return Toolkit
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
