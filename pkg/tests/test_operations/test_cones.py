from __future__ import annotations

import numpy as np
import pytest

from polyshadow.geometry.exceptions import DimensionMismatch, PointNotInPolytope
from polyshadow.models.cone import Cone, GenericDirection
from polyshadow.models.subspace import Subspace
from tests.helpers import exact_toolkit, float_toolkit


def test_normal_cone_of_cube_vertex_is_negative_orthant() -> None:
    toolkit = exact_toolkit()
    cube = toolkit.cube(3)

    cone = toolkit.normal_cone(cube, [0])

    assert toolkit.cones.cone_dim(cone) == 3
    assert toolkit.cones.cone_contains(cone, [-1, -2, "-1/3"])
    assert not toolkit.cones.cone_contains(cone, [1, 0, 0])


def test_normal_cone_dimensions_follow_face_dimensions() -> None:
    toolkit = exact_toolkit()
    cube = toolkit.cube(3)

    for j in range(3):
        for face in cube.faces(j):
            assert toolkit.cones.cone_dim(toolkit.normal_cone(cube, face)) == 3 - j
    assert toolkit.normal_cone(cube, range(8)).is_trivial


def test_full_normal_cone_of_lower_dimensional_body_adds_the_normal_line() -> None:
    toolkit = exact_toolkit()
    triangle = toolkit.canonical_hull([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    relative = toolkit.normal_cone(triangle, [0])
    full = toolkit.normal_cone(triangle, [0], full=True)

    assert toolkit.cones.cone_dim(relative) == 2
    assert toolkit.cones.cone_dim(full) == 3
    assert toolkit.cones.cone_contains(full, [-1, -1, -1])
    assert not toolkit.cones.cone_contains(relative, [-1, -1, -1])


def test_support_cone_at_vertex_and_interior_point() -> None:
    toolkit = exact_toolkit()
    cube = toolkit.cube(3)

    at_vertex = toolkit.support_cone(cube, [0, 0, 0])
    at_center = toolkit.support_cone(cube, ["1/2", "1/2", "1/2"])

    assert toolkit.cones.cone_contains(at_vertex, [1, 1, 0])
    assert not toolkit.cones.cone_contains(at_vertex, [-1, 0, 0])
    assert toolkit.cones.cone_contains(at_center, [-1, 0, 0])


def test_support_cone_requires_point_of_polytope() -> None:
    toolkit = exact_toolkit()

    with pytest.raises(PointNotInPolytope):
        toolkit.support_cone(toolkit.cube(2), [2, 2])


def test_polar_of_vertex_normal_cone_is_the_support_cone() -> None:
    toolkit = exact_toolkit()
    polytope = toolkit.cross_polytope(3)

    polar = toolkit.cone_polar(toolkit.normal_cone(polytope, [0]))
    support = toolkit.support_cone(polytope, polytope.vertices[0])

    assert toolkit.cones.cones_equal(polar, support)


def test_polar_of_half_plane_generators_is_a_ray() -> None:
    toolkit = exact_toolkit()
    cone = Cone(2, [(1, 0), (-1, 0), (0, 1)], toolkit.backend)

    polar = toolkit.cone_polar(cone)

    assert toolkit.cones.cone_dim(polar) == 1
    assert toolkit.cones.cone_contains(polar, [0, -3])


def test_relative_polar_stays_inside_the_subspace() -> None:
    toolkit = exact_toolkit()
    plane = Subspace.coordinate(3, [0, 1], toolkit.backend)
    cone = Cone(3, [(1, 0, 0)], toolkit.backend)

    polar = toolkit.cone_polar(cone, within=plane)

    assert all(g[2] == 0 for g in polar.generators)
    assert toolkit.cones.cone_contains(polar, [-1, 5, 0])
    assert not toolkit.cones.cone_contains(polar, [0, 0, 1])


def test_projected_cone_membership() -> None:
    toolkit = exact_toolkit()
    cone = Cone(3, [(1, 1, 0)], toolkit.backend)
    axis = Subspace.coordinate(3, [0], toolkit.backend)

    assert toolkit.projected_cone_contains(cone, axis, [2, 0, 0])
    assert not toolkit.projected_cone_contains(cone, axis, [-1, 0, 0])
    assert not toolkit.projected_cone_contains(cone, axis, [0, 1, 0])


def test_projected_cone_dim_of_orthant() -> None:
    toolkit = exact_toolkit()
    orthant = toolkit.normal_cone(toolkit.cube(3), [0])

    assert toolkit.cones.projected_cone_dim(orthant, Subspace.coordinate(3, [0, 1], toolkit.backend)) == 2
    assert toolkit.cones.projected_cone_dim(orthant, Subspace.coordinate(3, [2], toolkit.backend)) == 1


def test_relative_normal_cone_matches_default_normal_cone() -> None:
    toolkit = exact_toolkit()
    triangle = toolkit.canonical_hull([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    assert toolkit.cones.cones_equal(
        toolkit.cones.relative_normal_cone(triangle, [0]), toolkit.normal_cone(triangle, [0])
    )


def test_normal_cone_at_edge_point() -> None:
    toolkit = exact_toolkit()

    cone = toolkit.cones.normal_cone_at(toolkit.cube(3), ["1/2", 0, 0])

    assert toolkit.cones.cone_dim(cone) == 2
    assert toolkit.cones.cone_contains(cone, [0, -1, -1])
    assert not toolkit.cones.cone_contains(cone, [-1, 0, 0])


def test_cone_intersection_of_quadrant_and_wedge() -> None:
    toolkit = exact_toolkit()
    quadrant = Cone(2, [(1, 0), (0, 1)], toolkit.backend)
    wedge = Cone(2, [(1, 1), (-1, 1)], toolkit.backend)

    meet = toolkit.cones.cone_intersection(quadrant, wedge)

    assert toolkit.cones.cones_equal(meet, Cone(2, [(1, 1), (0, 1)], toolkit.backend))
    assert not toolkit.cones.cone_contains(meet, [1, 0])
    assert not toolkit.cones.cone_contains(meet, [-1, 1])


def test_section_of_cube_through_center() -> None:
    toolkit = exact_toolkit()
    plane = Subspace.coordinate(3, [0, 1], toolkit.backend)

    square = toolkit.section(toolkit.cube(3), ["1/2", "1/2", "1/2"], plane)

    assert square.dim == 2
    assert toolkit.volume(square) == 1


@pytest.mark.parametrize("vertex", [0, 3])
def test_section_cone_identity_holds_at_cube_vertices(vertex: int) -> None:
    toolkit = exact_toolkit()
    directions = Subspace.span([[1, 1, 0], [0, 0, 1]], toolkit.backend)

    identity = toolkit.section_cone_identity(toolkit.cube(3), directions, vertex)

    assert identity["holds"]


def test_generic_direction_is_orthogonal_and_verifiable() -> None:
    toolkit = exact_toolkit(seed=11)
    polytope = toolkit.cross_polytope(3)
    subspace = Subspace.coordinate(3, [0, 1], toolkit.backend)

    direction = toolkit.generic_direction(polytope, subspace)

    assert direction.u[0] == 0 and direction.u[1] == 0
    assert direction.u[2] != 0
    assert toolkit.cones.verify_direction(polytope, subspace, direction)


def test_generic_direction_is_reproducible_for_a_seed() -> None:
    polytope = float_toolkit().cross_polytope(4)

    first = float_toolkit(seed=5)
    second = float_toolkit(seed=5)
    subspace = first.random_subspace(4, 2, seed=1)

    assert first.generic_direction(polytope, subspace).u == second.generic_direction(polytope, subspace).u


def test_verify_direction_rejects_vectors_inside_the_subspace() -> None:
    toolkit = exact_toolkit()
    polytope = toolkit.cross_polytope(3)
    subspace = Subspace.coordinate(3, [0, 1], toolkit.backend)

    assert not toolkit.cones.verify_direction(polytope, subspace, GenericDirection((1, 0, 0), []))


def test_generic_direction_rejects_dimension_mismatch() -> None:
    toolkit = exact_toolkit()

    with pytest.raises(DimensionMismatch):
        toolkit.generic_direction(toolkit.cube(3), Subspace.coordinate(4, [0], toolkit.backend))


@pytest.mark.parametrize("body", ["cube", "cross_polytope"])
def test_edge_normal_cone_is_the_meet_of_its_vertex_cones(body: str) -> None:
    toolkit = exact_toolkit()
    polytope = getattr(toolkit, body)(3)

    for edge in polytope.faces(1):
        first, second = (toolkit.normal_cone(polytope, [i]) for i in edge.vertex_ids)
        meet = toolkit.cones.cone_intersection(first, second)

        assert toolkit.cones.cones_equal(meet, toolkit.normal_cone(polytope, edge))


@pytest.mark.parametrize("apex", [(0, 0, 1), (0, 0, -1)])
def test_section_cone_identity_holds_at_octahedron_apexes(apex: tuple[int, ...]) -> None:
    toolkit = exact_toolkit()
    octahedron = toolkit.cross_polytope(3)
    directions = Subspace.span([[1, 1, 0], [0, 0, 1]], toolkit.backend)

    identity = toolkit.section_cone_identity(octahedron, directions, list(octahedron.vertices).index(apex))

    assert identity["holds"]


def test_exact_and_float_projected_cone_membership_agree() -> None:
    exact, floating = exact_toolkit(), float_toolkit()
    octahedron = exact.cross_polytope(3)
    plane = [[1, 1, 0], [0, 0, 1]]
    exact_plane = Subspace.span(plane, exact.backend)
    float_plane = Subspace.span(plane, floating.backend)
    rng = np.random.default_rng(0)

    queries = 0
    for j in range(3):
        for face in octahedron.faces(j):
            cone = exact.cones.full_normal_cone(octahedron, face)
            twin = Cone(3, [[float(x) for x in g] for g in cone.generators], floating.backend)
            for a, b in rng.standard_normal((40, 2)):
                u = [a, a, b]
                assert exact.projected_cone_contains(cone, exact_plane, u) == floating.projected_cone_contains(
                    twin, float_plane, u
                )
                queries += 1

    assert queries >= 1000


def test_standard_bodies_are_built_once_per_toolkit() -> None:
    toolkit = exact_toolkit()

    assert toolkit.cross_polytope(4) is toolkit.cross_polytope(4)
    assert toolkit.standard_simplex(3) is toolkit.standard_simplex(3)


def test_full_normal_cones_are_memoised_on_the_polytope() -> None:
    toolkit = exact_toolkit()
    cube = toolkit.cube(3)

    assert toolkit.cones.full_normal_cone(cube, [0]) is toolkit.cones.full_normal_cone(cube, [0])


@pytest.mark.parametrize("d", [1, 2])
def test_certificate_only_lists_faces_up_to_dimension_d_plus_one(d: int) -> None:
    toolkit = exact_toolkit(seed=d)
    polytope = toolkit.cross_polytope(4)
    subspace = Subspace.coordinate(4, range(d), toolkit.backend)

    direction = toolkit.generic_direction(polytope, subspace)

    assert direction.certificate
    assert all(len(ids) <= d + 2 for ids, _ in direction.certificate)


def test_verify_direction_rejects_a_direction_in_a_two_face_cone() -> None:
    toolkit = exact_toolkit()
    polytope = toolkit.cross_polytope(4)
    axis = Subspace.coordinate(4, [0], toolkit.backend)

    assert not toolkit.cones.verify_direction(polytope, axis, GenericDirection((0, 1, 1, 1), []))
    assert toolkit.cones.verify_direction(polytope, axis, GenericDirection((0, 3, 2, 1), []))
