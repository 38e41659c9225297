from __future__ import annotations

from collections.abc import Mapping, Sequence
from typing import Any, Callable, TypeVar, Union

from polyshadow.geometry.kernel.scalar import Backend, Measure, decode_scalar, encode_scalar

T = TypeVar('T', bound='GeometryObject')

JSONScalar = Union[str, float, int]


def encode_vector(vector: Sequence[Measure]) -> list[JSONScalar]:
    return [encode_scalar(x) for x in vector]


def encode_matrix(matrix: Sequence[Sequence[Measure]]) -> list[list[JSONScalar]]:
    return [encode_vector(row) for row in matrix]


def decode_vector(values: Sequence[Any], backend: Backend) -> tuple[Any, ...]:
    return tuple(decode_scalar(x, backend) for x in values)


def decode_matrix(rows: Sequence[Sequence[Any]], backend: Backend) -> list[list[Any]]:
    return [list(decode_vector(row, backend)) for row in rows]


class GeometryObject:
    """
    Base class for serialisable geometry values.

    Subclasses set ``_object`` to the JSON type tag and implement ``to_dict`` and
    ``load``. Instances are treated as immutable once constructed.
    """

    _object: str = ''

    @classmethod
    def load(cls: type[T], props: Mapping[str, Any], backend: Backend) -> T:
        """
        Create a new instance from its JSON properties.

        Args:
            props: Dictionary produced by ``to_dict`` (or hand-written input)
            backend: Scalar backend used to decode numbers

        Returns:
            A new instance of the class
        """
        raise NotImplementedError

    def to_dict(self) -> dict[str, Any]:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}>"


LoaderCallable = Callable[[Mapping[str, Any], Backend], Any]


def get_loader(name: str) -> LoaderCallable:
    """
    Get the loader for a JSON ``"object"`` tag.

    Args:
        name: The type of object to load (e.g. 'polytope', 'subspace')

    Returns:
        A callable building the matching model; unknown tags come back as plain dicts.
    """
    from . import cone, experiment, inertia, polytope, quadratic, subspace

    classes: dict[str, LoaderCallable] = {
        'polytope': polytope.Polytope.load,
        'subspace': subspace.Subspace.load,
        'cone': cone.Cone.load,
        'generic_direction': cone.GenericDirection.load,
        'quadratic_form': quadratic.QuadraticForm.load,
        'inertia_report': inertia.InertiaReport.load,
        'experiment_config': experiment.ExperimentConfig.load,
        'experiment_record': experiment.ExperimentRecord.load,
    }
    return classes.get(name, lambda props, backend: dict(props))


def load_object(props: Mapping[str, Any], backend: Backend) -> Any:
    """Dispatch on the ``"object"`` key."""
    if 'object' not in props:
        return dict(props)
    return get_loader(props['object'])(props, backend)
