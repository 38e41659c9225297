from typing import Any, Mapping, Optional


class PolyshadowError(Exception):
    """Base exception class for all polyshadow errors."""

    category = "unknown"


class PolyshadowValidationError(PolyshadowError):
    """Raised when inputs are rejected before any geometry is computed."""

    category = "validation"

    def __init__(
        self,
        message: str,
        details: Optional[Mapping[str, Any]] = None,
    ) -> None:
        self.message = message
        self.details = dict(details or {})
        super().__init__(message)


class EmptyInput(PolyshadowValidationError):
    """Raised when a point set is empty."""


class DimensionMismatch(PolyshadowValidationError):
    """Raised when vectors, subspaces or bodies disagree on the ambient dimension."""


class FaceNotInPolytope(PolyshadowValidationError):
    """Raised when a vertex-index set is not a face of the given polytope."""


class PointNotInPolytope(PolyshadowValidationError):
    """Raised when a point is required to lie in a polytope but does not."""


class OriginOutside(PolyshadowValidationError):
    """Raised when the origin is not an interior point and an inradius is requested."""


class NotSymmetric(PolyshadowValidationError):
    """Raised when a centrally symmetric body is required."""


class NotIsotropicInput(PolyshadowValidationError):
    """Raised when a body is required to be in isotropic position but is not."""


class PreconditionViolated(PolyshadowValidationError):
    """Raised when a numeric precondition (volume, barycenter, ...) does not hold."""


class DimensionUnsupported(PolyshadowValidationError):
    """Raised when an operation is restricted to small ambient dimensions."""
