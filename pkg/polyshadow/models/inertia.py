from __future__ import annotations

from collections.abc import Mapping, Sequence
from typing import Any, Literal, NotRequired, Optional, TypedDict

from polyshadow.geometry.kernel.linalg import Matrix, Vector, add, matvec
from polyshadow.geometry.kernel.scalar import Backend, Measure, Scalar, decode_scalar

from .shared import (
    GeometryObject,
    JSONScalar,
    decode_matrix,
    decode_vector,
    encode_matrix,
    encode_scalar,
    encode_vector,
)
from .subspace import Subspace


class AffineMapProps(TypedDict):
    A: list[list[JSONScalar]]
    b: list[JSONScalar]


class InertiaReportProps(TypedDict):
    """InertiaReport JSON: {volume, barycenter, covariance, L, iso_map: {A, b}}."""

    object: NotRequired[Literal["inertia_report"]]
    dim: int
    volume: JSONScalar
    barycenter: list[JSONScalar]
    covariance: list[list[JSONScalar]]
    chart_covariance: NotRequired[list[list[float]]]
    L: float
    iso_map: AffineMapProps


class AffineMap:
    """x ↦ A x + b."""

    def __init__(self, matrix: Sequence[Sequence[Scalar]], translation: Sequence[Scalar]) -> None:
        self.matrix: Matrix = [list(row) for row in matrix]
        self.translation: Vector = tuple(translation)

    def __call__(self, x: Sequence[Scalar]) -> Vector:
        return add(matvec(self.matrix, x), self.translation)

    def to_dict(self) -> AffineMapProps:
        return {"A": encode_matrix(self.matrix), "b": encode_vector(self.translation)}

    @classmethod
    def load(cls, props: Mapping[str, Any], backend: Backend) -> "AffineMap":
        return cls(decode_matrix(props["A"], backend), decode_vector(props["b"], backend))

    def __repr__(self) -> str:
        return f"<AffineMap {len(self.matrix)}x{len(self.matrix[0]) if self.matrix else 0}>"


class InertiaReport(GeometryObject):
    """
    Volume, barycenter and covariance of a polytope, with its isotropy constant.

    ``covariance`` is the centred matrix (1/Vol)∫(x−b)(x−b)ᵀ in ambient coordinates and
    stays exact in exact mode. ``chart_covariance`` is the same matrix as a k×k float
    array in an orthonormal chart of aff P; ``iso_map`` sends P to ℝᵏ in isotropic position.
    """

    _object = "inertia_report"

    def __init__(
        self,
        dim: int,
        volume: Measure,
        barycenter: Vector,
        covariance: Matrix,
        chart_covariance: list[list[float]],
        L: float,
        iso_map: AffineMap,
        det_chart: Optional[Scalar] = None,
    ) -> None:
        self.dim = dim
        self.volume = volume
        self.barycenter = tuple(barycenter)
        self.covariance = covariance
        self.chart_covariance = chart_covariance
        self.L = L
        self.iso_map = iso_map
        self.det_chart = det_chart

    @classmethod
    def load(cls, props: Mapping[str, Any], backend: Backend) -> "InertiaReport":
        return cls(
            int(props["dim"]),
            decode_scalar(props["volume"], backend),
            decode_vector(props["barycenter"], backend),
            decode_matrix(props["covariance"], backend),
            [[float(x) for x in row] for row in props.get("chart_covariance", [])],
            float(props["L"]),
            AffineMap.load(props["iso_map"], backend),
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "object": "inertia_report",
            "dim": self.dim,
            "volume": encode_scalar(self.volume),
            "barycenter": encode_vector(self.barycenter),
            "covariance": encode_matrix(self.covariance),
            "chart_covariance": self.chart_covariance,
            "L": self.L,
            "iso_map": self.iso_map.to_dict(),
        }

    def __repr__(self) -> str:
        return f"<InertiaReport dim={self.dim} L={self.L:.6f}>"


class Embedding:
    """
    Subspace E with the linear map T and translation t so that T(P_E X) + t = K.

    For the cross-polytope embedding t = 0; for the simplex embedding t is the vertex mean.
    """

    def __init__(self, subspace: Subspace, linear: Matrix, translation: Vector) -> None:
        self.subspace = subspace
        self.linear = linear
        self.translation = tuple(translation)

    def __call__(self, x: Sequence[Scalar]) -> Vector:
        return add(matvec(self.linear, x), self.translation)

    def to_dict(self) -> dict[str, Any]:
        return {
            "subspace": self.subspace.to_dict(),
            "iso": {"A": encode_matrix(self.linear), "b": encode_vector(self.translation)},
        }

    def __repr__(self) -> str:
        return f"<Embedding dim={self.subspace.dim} ambient={self.subspace.ambient_dim}>"
