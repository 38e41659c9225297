import logging
from collections.abc import Iterable
from functools import wraps
from typing import Any, Callable, Optional, TypeVar

from polyshadow.geometry.exceptions import (
    DimensionMismatch,
    PolyshadowValidationError,
    RetriesExhausted,
)

T = TypeVar('T', bound=Callable[..., Any])

logger = logging.getLogger(__name__)


def resample_on(
    exc_type: type[Exception] | tuple[type[Exception], ...],
    attempts: int = 16,
) -> Callable[[T], T]:
    """Call again when a probability-zero degenerate sample raises ``exc_type``."""

    def decorator(func: T) -> T:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            last: Optional[Exception] = None
            for attempt in range(attempts):
                try:
                    return func(*args, **kwargs)
                except exc_type as exc:
                    last = exc
                    logger.warning("%s: resampling after %s (attempt %d)", func.__name__, exc, attempt + 1)
            raise RetriesExhausted(
                f"{func.__name__} kept producing degenerate samples",
                {"attempts": attempts, "last_error": str(last)},
            ) from last

        return wrapper  # type: ignore[return-value]

    return decorator


def validate_dimensions(expected: int, *vectors: Iterable[Any]) -> None:
    """Require every vector to have length ``expected``."""
    for vector in vectors:
        length = len(list(vector))
        if length != expected:
            raise DimensionMismatch(
                "vector length does not match the ambient dimension",
                {"expected": expected, "got": length},
            )


def validate_subspace_dim(n: int, d: int) -> int:
    """Proper non-trivial subspaces: 1 ≤ d ≤ n − 1."""
    if n < 2:
        raise PolyshadowValidationError("ambient dimension must be at least 2", {"n": n})
    if not 1 <= d <= n - 1:
        raise PolyshadowValidationError("d must be between 1 and n - 1", {"n": n, "d": d})
    return d


def validate_trials(trials: int) -> int:
    if trials < 1:
        raise PolyshadowValidationError("trials must be at least 1", {"trials": trials})
    return trials


def validate_vertex_count(n: int, m: int) -> int:
    """Random sphere polytopes need m ≥ n points to be full-dimensional."""
    if m < n:
        raise PolyshadowValidationError("m must be at least n", {"n": n, "m": m})
    return m


def validate_kind(kind: str, kinds: Iterable[str]) -> str:
    allowed = tuple(kinds)
    if kind not in allowed:
        raise PolyshadowValidationError(
            f"kind must be one of {', '.join(allowed)}", {"kind": kind}
        )
    return kind
