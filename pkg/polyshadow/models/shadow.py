from __future__ import annotations

from collections.abc import Sequence
from typing import Any

from polyshadow.geometry.kernel.linalg import Matrix
from polyshadow.geometry.kernel.scalar import Measure, Scalar, scale_measure

from .cone import GenericDirection
from .polytope import Face, Polytope
from .shared import GeometryObject, encode_matrix, encode_scalar
from .subspace import Subspace


class ShadowFace:
    """
    One d-face F of the decomposition.

    ``witness`` is the d×d matrix of P_E restricted to aff F, written in orthogonal
    charts of F and E; its determinant is non-zero exactly when P_E|F is injective.
    ``weight`` = |det witness| · chart volume of F, so Vol_d(P_E F) = weight · √gram(E).
    """

    def __init__(
        self,
        face: Face,
        hull: Polytope,
        weight: Scalar,
        volume: Measure,
        projected_volume: Measure,
        witness: Matrix,
        witness_det: Scalar,
        witness_rank: int,
    ) -> None:
        self.face = face
        self.hull = hull
        self.weight = weight
        self.volume = volume
        self.projected_volume = projected_volume
        self.witness = witness
        self.witness_det = witness_det
        self.witness_rank = witness_rank

    def to_dict(self) -> dict[str, Any]:
        return {
            "vertex_ids": list(self.face.vertex_ids),
            "volume": encode_scalar(self.volume),
            "projected_volume": encode_scalar(self.projected_volume),
            "witness": encode_matrix(self.witness),
            "rank": self.witness_rank,
        }

    def __repr__(self) -> str:
        return f"<ShadowFace vertices={list(self.face.vertex_ids)}>"


class ShadowDecomposition(GeometryObject):
    """The faces F̃_d(K, E, u) whose projections tile P_E K."""

    _object = "shadow_decomposition"

    def __init__(
        self,
        polytope: Polytope,
        subspace: Subspace,
        direction: GenericDirection,
        faces: Sequence[ShadowFace],
    ) -> None:
        self.polytope = polytope
        self.subspace = subspace
        self.direction = direction
        self.faces: tuple[ShadowFace, ...] = tuple(faces)

    @property
    def d(self) -> int:
        return self.subspace.dim

    @property
    def d_faces(self) -> list[Face]:
        return [f.face for f in self.faces]

    def projected_volume(self) -> Measure:
        """Σ_F Vol_d(P_E F) = (Σ_F weight) · √gram(E)."""
        total: Any = 0
        for f in self.faces:
            total = total + f.weight
        return scale_measure(total, self.subspace.measure_scale())

    def to_dict(self) -> dict[str, Any]:
        return {
            "object": "shadow_decomposition",
            "polytope": self.polytope.to_dict(),
            "subspace": self.subspace.to_dict(),
            "direction": self.direction.to_dict(),
            "faces": [f.to_dict() for f in self.faces],
            "projected_volume": encode_scalar(self.projected_volume()),
        }

    def __repr__(self) -> str:
        return f"<ShadowDecomposition d={self.d} faces={len(self.faces)}>"
