"""Exceptions raised while a geometric computation is running."""

from typing import Any, Mapping, Optional

from .base import PolyshadowError, PolyshadowValidationError


class PolyshadowComputationError(PolyshadowError):
    """Base exception for failures inside a computation."""

    category = "computation"

    def __init__(
        self,
        message: str,
        context: Optional[Mapping[str, Any]] = None,
    ) -> None:
        self.message = message
        self.context = dict(context or {})
        super().__init__(message)


class DegenerateSimplex(PolyshadowComputationError):
    """Raised when simplex vertices are affinely dependent."""


class DegeneratePolytope(PolyshadowComputationError):
    """Raised when a body has too small a dimension for the requested quantity."""


DegenerateBody = DegeneratePolytope


class DegenerateProjection(PolyshadowComputationError):
    """Raised when P_E K has dimension smaller than dim E."""


class NonGenericDirection(PolyshadowComputationError):
    """Raised when a direction does not carry a valid genericity certificate."""


class RetriesExhausted(PolyshadowComputationError):
    """Raised when random sampling did not produce an acceptable candidate."""

    category = "retries"


class RankDeficient(PolyshadowComputationError):
    """Raised when a matrix has lower rank than required."""


class DegenerateHull(PolyshadowComputationError):
    """Raised when a random hull is not full-dimensional."""


class EmptySection(PolyshadowComputationError):
    """Raised when a hyperplane misses a polytope."""


class InfeasibleProgram(PolyshadowComputationError):
    """Raised when a linear program that must be feasible is not."""


EXIT_CODES: dict[type[PolyshadowError], int] = {
    PolyshadowValidationError: 1,
    PolyshadowComputationError: 2,
}


def exit_code_for(exc: BaseException) -> int:
    """Return the CLI exit code for an exception raised by a command."""

    for exc_type, code in EXIT_CODES.items():
        if isinstance(exc, exc_type):
            return code
    if isinstance(exc, (ValueError, KeyError, TypeError, OSError)):
        return 1
    return 2
