from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from .geometry.toolkit import Toolkit

__all__ = ['Toolkit']


def __getattr__(name: str) -> Any:
    if name == 'Toolkit':
        from .geometry.toolkit import Toolkit

        return Toolkit
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
