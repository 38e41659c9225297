from __future__ import annotations

from collections.abc import Mapping, Sequence
from typing import Any, Literal, NotRequired, TypedDict

from polyshadow.geometry.exceptions import DimensionMismatch
from polyshadow.geometry.kernel.linalg import Vector
from polyshadow.geometry.kernel.scalar import Backend

from .shared import GeometryObject, JSONScalar, decode_matrix, decode_vector, encode_matrix, encode_vector


class ConeProps(TypedDict):
    """Cone JSON shape."""

    object: NotRequired[Literal["cone"]]
    ambient_dim: int
    generators: list[list[JSONScalar]]


class CertificateEntry(TypedDict):
    face: list[int]
    dim: int


class GenericDirectionProps(TypedDict):
    object: NotRequired[Literal["generic_direction"]]
    u: list[JSONScalar]
    certificate: list[CertificateEntry]
    attempts: int


class Cone(GeometryObject):
    """
    Finitely generated cone {Σ λ_i g_i : λ_i ≥ 0} with apex at the origin.

    Zero generators are dropped, so the cone {0} has an empty generator list.
    """

    _object = "cone"

    def __init__(self, ambient_dim: int, generators: Sequence[Vector], backend: Backend) -> None:
        for g in generators:
            if len(g) != ambient_dim:
                raise DimensionMismatch(
                    "generator length does not match the cone's ambient dimension",
                    {"ambient_dim": ambient_dim, "got": len(g)},
                )
        self.ambient_dim = ambient_dim
        self.generators: tuple[Vector, ...] = tuple(
            tuple(g) for g in generators if not all(backend.is_zero(x) for x in g)
        )
        self.backend = backend

    @classmethod
    def load(cls, props: Mapping[str, Any], backend: Backend) -> "Cone":
        return cls(props["ambient_dim"], decode_matrix(props["generators"], backend), backend)

    def to_dict(self) -> dict[str, Any]:
        return {
            "object": "cone",
            "ambient_dim": self.ambient_dim,
            "generators": encode_matrix(self.generators),
        }

    @property
    def is_trivial(self) -> bool:
        return not self.generators

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return f"<Cone ambient={self.ambient_dim} generators={len(self.generators)}>"


class GenericDirection(GeometryObject):
    """
    Direction u ∈ E⊥ with the list of low-dimensional projected normal cones it avoids.

    Each certificate entry is (face vertex ids, dim of the projected cone).
    """

    _object = "generic_direction"

    def __init__(
        self,
        u: Vector,
        certificate: Sequence[tuple[tuple[int, ...], int]],
        attempts: int = 1,
    ) -> None:
        self.u = tuple(u)
        self.certificate = tuple((tuple(ids), dim) for ids, dim in certificate)
        self.attempts = attempts

    @classmethod
    def load(cls, props: Mapping[str, Any], backend: Backend) -> "GenericDirection":
        return cls(
            decode_vector(props["u"], backend),
            [(tuple(entry["face"]), int(entry["dim"])) for entry in props.get("certificate", [])],
            int(props.get("attempts", 1)),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "object": "generic_direction",
            "u": encode_vector(self.u),
            "certificate": [{"face": list(ids), "dim": dim} for ids, dim in self.certificate],
            "attempts": self.attempts,
        }

    def __repr__(self) -> str:
        return f"<GenericDirection checked={len(self.certificate)} attempts={self.attempts}>"
