from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from typing import Any, Literal, NamedTuple, NotRequired, TypedDict

from polyshadow.geometry.exceptions import FaceNotInPolytope
from polyshadow.geometry.kernel.hull import FaceLattice, HullData, build_hull, ids_of, mask_of
from polyshadow.geometry.kernel.linalg import Chart, Vector
from polyshadow.geometry.kernel.scalar import Backend, Scalar

from .shared import GeometryObject, JSONScalar, decode_matrix, encode_matrix


class PolytopeProps(TypedDict):
    """Polytope JSON shape: only the points are stored, everything else is derived."""

    object: NotRequired[Literal["polytope"]]
    ambient_dim: int
    vertices: list[list[JSONScalar]]


class Facet(NamedTuple):
    """Outer normal in the direction space of aff P, offset, and the facet's vertices."""

    normal: Vector
    offset: Scalar
    vertex_ids: tuple[int, ...]


class Polytope(GeometryObject):
    """
    V-polytope with its H-representation and face lattice.

    Build through ``Polytope.from_points`` (or ``canonical_hull``); the vertex list holds
    extreme points only, in input order.

    Attributes:
        ambient_dim: n
        vertices: extreme points
        dim: intrinsic dimension k
        facets: facets of P inside aff P
        lattice: every face as a vertex bitmask, grouped by dimension
        chart: orthogonal chart of aff P anchored at the first vertex
        backend: scalar backend the polytope was built with
    """

    _object = "polytope"

    def __init__(self, hull: HullData, backend: Backend) -> None:
        self.ambient_dim: int = len(hull.vertices[0])
        self.vertices: tuple[Vector, ...] = hull.vertices
        self.dim: int = hull.dim
        self.facets: tuple[Facet, ...] = tuple(
            Facet(f.normal, f.offset, ids_of(f.mask)) for f in hull.facets
        )
        self.lattice: FaceLattice = hull.lattice
        self.chart: Chart = hull.chart
        self.backend: Backend = backend
        self._cache: dict[str, Any] = {}

    @classmethod
    def from_points(cls, points: Sequence[Sequence[Any]], backend: Backend) -> "Polytope":
        return cls(build_hull(points, backend), backend)

    @classmethod
    def load(cls, props: Mapping[str, Any], backend: Backend) -> "Polytope":
        return cls.from_points(decode_matrix(props["vertices"], backend), backend)

    def to_dict(self) -> dict[str, Any]:
        return {
            "object": "polytope",
            "ambient_dim": self.ambient_dim,
            "vertices": encode_matrix(self.vertices),
        }

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def f_vector(self) -> tuple[int, ...]:
        """(f_0, ..., f_{k-1})."""
        return self.lattice.f_vector()

    def euler_characteristic(self) -> int:
        return sum((-1) ** j * f for j, f in enumerate(self.f_vector()))

    def faces(self, j: int) -> list["Face"]:
        return [Face(self, ids_of(mask), j) for mask in self.lattice.levels.get(j, ())]

    def all_faces(self) -> list["Face"]:
        return [face for j in range(self.dim + 1) for face in self.faces(j)]

    def face(self, vertex_ids: Iterable[int]) -> "Face":
        ids = tuple(sorted(set(vertex_ids)))
        j = self.lattice.dimension_of(mask_of(ids))
        if j is None:
            raise FaceNotInPolytope(
                "vertex set is not a face of the polytope",
                {"vertex_ids": list(ids), "vertices": len(self.vertices)},
            )
        return Face(self, ids, j)

    def facets_containing(self, face: "Face") -> list[Facet]:
        ids = set(face.vertex_ids)
        return [f for f in self.facets if ids <= set(f.vertex_ids)]

    def points(self, vertex_ids: Iterable[int]) -> list[Vector]:
        return [self.vertices[i] for i in vertex_ids]

    def __repr__(self) -> str:
        return f"<Polytope dim={self.dim} ambient={self.ambient_dim} f={self.f_vector()}>"


class Face:
    """A face of a polytope, identified by its sorted vertex indices."""

    def __init__(self, parent: Polytope, vertex_ids: tuple[int, ...], dim: int) -> None:
        self.parent = parent
        self.vertex_ids = vertex_ids
        self.dim = dim

    @property
    def mask(self) -> int:
        return mask_of(self.vertex_ids)

    @property
    def points(self) -> list[Vector]:
        return self.parent.points(self.vertex_ids)

    def subfaces(self) -> list["Face"]:
        if self.dim == 0:
            return []
        return [
            Face(self.parent, ids_of(m), self.dim - 1)
            for m in self.parent.lattice.children[self.mask]
        ]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Face)
            and other.parent is self.parent
            and other.vertex_ids == self.vertex_ids
        )

    def __hash__(self) -> int:
        return hash((id(self.parent), self.vertex_ids))

    def __repr__(self) -> str:
        return f"<Face dim={self.dim} vertices={list(self.vertex_ids)}>"
