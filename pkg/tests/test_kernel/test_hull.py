from __future__ import annotations

from fractions import Fraction

import pytest

from polyshadow.geometry.exceptions import DimensionMismatch, EmptyInput, FaceNotInPolytope
from polyshadow.geometry.kernel.hull import halfspace_vertices, ids_of, mask_of
from polyshadow.geometry.kernel.scalar import make_backend
from polyshadow.models.subspace import Subspace
from tests.helpers import exact_toolkit, float_toolkit, square_with_interior_points


@pytest.mark.parametrize(
    ("builder", "dim", "expected"),
    [
        ("cross_polytope", 3, (6, 12, 8)),
        ("cube", 3, (8, 12, 6)),
        ("cross_polytope", 4, (8, 24, 32, 16)),
        ("cube", 4, (16, 32, 24, 8)),
        ("standard_simplex", 3, (4, 6, 4)),
    ],
)
def test_f_vectors_of_standard_bodies(builder: str, dim: int, expected: tuple[int, ...]) -> None:
    toolkit = exact_toolkit()

    polytope = getattr(toolkit, builder)(dim)

    assert toolkit.f_vector(polytope) == expected


@pytest.mark.parametrize("dim", [3, 4])
def test_euler_characteristic_of_cubes(dim: int) -> None:
    polytope = exact_toolkit().cube(dim)

    assert polytope.euler_characteristic() == 1 + (-1) ** (dim - 1)


def test_canonical_hull_drops_interior_and_boundary_points() -> None:
    polytope = exact_toolkit().canonical_hull(square_with_interior_points())

    assert polytope.dim == 2
    assert [list(v) for v in polytope.vertices] == [[0, 0], [2, 0], [2, 2], [0, 2]]


def test_canonical_hull_removes_duplicate_points() -> None:
    polytope = exact_toolkit().canonical_hull([[0, 0], [1, 0], [0, 1], [1, 0], ["0", "1"]])

    assert len(polytope.vertices) == 3


def test_canonical_hull_keeps_lower_dimensional_bodies() -> None:
    toolkit = exact_toolkit()

    triangle = toolkit.canonical_hull([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    segment = toolkit.canonical_hull([[0, 0, 0], [1, 1, 1], ["1/2", "1/2", "1/2"]])

    assert triangle.dim == 2
    assert triangle.f_vector() == (3, 3)
    assert segment.dim == 1
    assert len(segment.vertices) == 2


def test_single_point_is_a_zero_dimensional_polytope() -> None:
    polytope = exact_toolkit().canonical_hull([[1, 2], [1, 2]])

    assert polytope.dim == 0
    assert exact_toolkit().volume(polytope) == 1


def test_canonical_hull_rejects_bad_input() -> None:
    toolkit = exact_toolkit()

    with pytest.raises(EmptyInput):
        toolkit.canonical_hull([])

    with pytest.raises(DimensionMismatch):
        toolkit.canonical_hull([[0, 0], [1, 0, 0]])


def test_exact_and_float_hulls_agree_on_vertex_sets() -> None:
    points = [[0, 0, 0], [3, 0, 0], [0, 3, 0], [0, 0, 3], [1, 1, 1], [1, 0, 0]]

    exact = exact_toolkit().canonical_hull(points)
    approx = float_toolkit().canonical_hull(points)

    assert [list(map(float, v)) for v in exact.vertices] == [list(v) for v in approx.vertices]
    assert exact.f_vector() == approx.f_vector()


def test_faces_are_closed_under_taking_subfaces() -> None:
    polytope = exact_toolkit().cube(3)

    for facet in polytope.faces(2):
        edges = facet.subfaces()
        assert len(edges) == 4
        assert all(set(edge.vertex_ids) <= set(facet.vertex_ids) for edge in edges)


def test_face_lookup_rejects_vertex_sets_that_are_not_faces() -> None:
    polytope = exact_toolkit().cube(2)

    diagonal = [i for i, v in enumerate(polytope.vertices) if v[0] == v[1]]

    with pytest.raises(FaceNotInPolytope):
        polytope.face(diagonal)


def test_minimal_face_of_an_edge_midpoint() -> None:
    toolkit = exact_toolkit()
    polytope = toolkit.cube(2)

    face = toolkit.kernel.minimal_face(polytope, ["1/2", 0])

    assert face.dim == 1
    assert sorted(tuple(map(int, p)) for p in face.points) == [(0, 0), (1, 0)]


def test_contains_point_decides_boundary_and_affine_hull() -> None:
    toolkit = exact_toolkit()
    square = toolkit.cube(2)
    triangle = toolkit.canonical_hull([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    assert toolkit.contains_point(square, [1, "1/2"])
    assert not toolkit.contains_point(square, [Fraction(3, 2), 0])
    assert toolkit.contains_point(triangle, ["1/3", "1/3", "1/3"])
    assert not toolkit.contains_point(triangle, [0, 0, 0])


def test_halfspace_vertices_recovers_the_square() -> None:
    backend = make_backend("exact")

    vertices = halfspace_vertices(
        [[1, 0], [-1, 0], [0, 1], [0, -1]],
        [backend.coerce(1), backend.coerce(0), backend.coerce(1), backend.coerce(0)],
        backend,
    )

    assert sorted(vertices) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_projection_of_cross_polytope_onto_coordinate_plane() -> None:
    toolkit = exact_toolkit()
    subspace = Subspace.coordinate(3, [0, 1], toolkit.backend)

    shadow = toolkit.project(toolkit.cross_polytope(3), subspace)

    assert shadow.dim == 2
    assert len(shadow.vertices) == 4
    assert toolkit.volume(shadow) == 2


def test_bitmask_helpers_round_trip() -> None:
    assert ids_of(mask_of([4, 0, 2])) == (0, 2, 4)
