from __future__ import annotations

from collections.abc import Mapping, Sequence
from typing import Any, Literal, NotRequired, TypedDict

from polyshadow.geometry.exceptions import DimensionMismatch, RankDeficient
from polyshadow.geometry.kernel.linalg import (
    Chart,
    Matrix,
    Vector,
    dot,
    gram_schmidt,
    nullspace,
    outer,
    scale,
    sub,
    unit,
)
from polyshadow.geometry.kernel.scalar import Backend, Measure

from .shared import GeometryObject, JSONScalar, decode_matrix, encode_matrix


class SubspaceProps(TypedDict):
    """Subspace JSON shape; the basis is re-orthogonalised on load."""

    object: NotRequired[Literal["subspace"]]
    ambient_dim: int
    basis: list[list[JSONScalar]]


class Subspace(GeometryObject):
    """
    Linear subspace E ⊆ ℝⁿ with an orthogonal basis.

    In float mode the basis is orthonormal. In exact mode it is orthogonal with rational
    entries; projections divide by ⟨b, b⟩, so nothing irrational is ever needed.
    """

    _object = "subspace"

    def __init__(self, basis: Sequence[Vector], backend: Backend) -> None:
        if not basis:
            raise RankDeficient("a subspace needs at least one basis vector")
        self.ambient_dim: int = len(basis[0])
        self.basis: tuple[Vector, ...] = tuple(tuple(b) for b in basis)
        self.dim: int = len(self.basis)
        self.chart: Chart = Chart.linear(self.basis, backend)
        self.backend: Backend = backend

    @classmethod
    def span(cls, vectors: Sequence[Sequence[Any]], backend: Backend) -> "Subspace":
        """Orthogonalise ``vectors`` in order; dependent vectors are dropped."""
        rows = [backend.vector(v) for v in vectors]
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise DimensionMismatch("spanning vectors have different lengths")
        basis = gram_schmidt(rows, backend)
        if not basis:
            raise RankDeficient("spanning vectors are all zero", {"count": len(rows)})
        return cls(basis, backend)

    @classmethod
    def coordinate(cls, n: int, indices: Sequence[int], backend: Backend) -> "Subspace":
        for i in indices:
            if not 0 <= i < n:
                raise DimensionMismatch(
                    "coordinate index out of range", {"index": i, "ambient_dim": n}
                )
        return cls([unit(n, i, backend) for i in sorted(set(indices))], backend)

    @classmethod
    def load(cls, props: Mapping[str, Any], backend: Backend) -> "Subspace":
        subspace = cls.span(decode_matrix(props["basis"], backend), backend)
        if "ambient_dim" in props and props["ambient_dim"] != subspace.ambient_dim:
            raise DimensionMismatch(
                "basis length does not match ambient_dim",
                {"ambient_dim": props["ambient_dim"], "basis": subspace.ambient_dim},
            )
        return subspace

    def to_dict(self) -> dict[str, Any]:
        return {
            "object": "subspace",
            "ambient_dim": self.ambient_dim,
            "basis": encode_matrix(self.basis),
        }

    def coords(self, x: Sequence[Any]) -> Vector:
        return self.chart.coords(x)

    def lift(self, c: Sequence[Any]) -> Vector:
        return self.chart.lift(c)

    def project(self, x: Sequence[Any]) -> Vector:
        """P_E x."""
        return self.chart.lift(self.chart.coords(x))

    def projection_matrix(self) -> Matrix:
        """P_E = Σ b bᵀ / ⟨b, b⟩, symmetric."""
        zero = self.backend.coerce(0)
        result = [[zero] * self.ambient_dim for _ in range(self.ambient_dim)]
        for b, nb in zip(self.basis, self.chart.norms2):
            contribution = outer(b, scale(b, 1 / nb))
            result = [[x + y for x, y in zip(r, c)] for r, c in zip(result, contribution)]
        return result

    def contains(self, x: Sequence[Any]) -> bool:
        residual = sub(x, self.project(x))
        magnitude = max((abs(float(v)) for v in x), default=1.0)
        return all(self.backend.is_zero(r, magnitude) for r in residual)

    def complement(self) -> "Subspace":
        """E⊥; raises RankDeficient when E is the whole space."""
        kernel = nullspace([list(b) for b in self.basis], self.ambient_dim, self.backend)
        return Subspace.span(kernel, self.backend)

    def gram_det(self) -> Any:
        return self.chart.gram_det()

    def measure_scale(self) -> Measure:
        return self.chart.measure_scale(self.backend)

    def is_orthogonal_to(self, v: Sequence[Any]) -> bool:
        magnitude = max((abs(float(x)) for x in v), default=1.0)
        return all(self.backend.is_zero(dot(b, v), magnitude) for b in self.basis)

    def __repr__(self) -> str:
        return f"<Subspace dim={self.dim} ambient={self.ambient_dim}>"
