from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from polyshadow.geometry.exceptions import DegeneratePolytope, NotSymmetric, OriginOutside
from polyshadow.models.subspace import Subspace
from tests.helpers import exact_toolkit, float_toolkit, triangle_points


def cross_polytope_L(d: int) -> float:
    return (2 / ((d + 1) * (d + 2))) ** 0.5 / (2**d / math.factorial(d)) ** (1 / d)


def test_cube_inertia_is_exact() -> None:
    toolkit = exact_toolkit()

    report = toolkit.inertia(toolkit.cube(3))

    assert report.volume == 1
    assert report.barycenter == (Fraction(1, 2),) * 3
    assert report.covariance == [
        [Fraction(1, 12) if i == j else 0 for j in range(3)] for i in range(3)
    ]
    assert report.L == pytest.approx(12**-0.5)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_cross_polytope_isotropy_constant(d: int) -> None:
    toolkit = float_toolkit()

    assert toolkit.isotropy_constant(toolkit.cross_polytope(d)) == pytest.approx(cross_polytope_L(d))


def test_cross_polytope_in_the_plane_matches_the_square() -> None:
    assert cross_polytope_L(2) == pytest.approx(12**-0.5)


def test_isotropy_constant_is_affine_invariant() -> None:
    toolkit = exact_toolkit()
    image = toolkit.apply_affine(toolkit.cube(3), [[2, 1, 0], [0, -1, 3], [1, 0, "1/2"]], [1, 2, 3])

    assert toolkit.isotropy_constant(image) == pytest.approx(12**-0.5)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_regular_simplex_covariance_is_scalar_inside_its_hyperplane(d: int) -> None:
    toolkit = float_toolkit()

    report = toolkit.inertia(toolkit.regular_simplex(d))

    expected = np.eye(d) / ((d + 1) * (d + 2))
    assert np.allclose(np.array(report.chart_covariance), expected)
    assert float(report.volume) == pytest.approx(math.sqrt(d + 1) / math.factorial(d))


def test_lower_dimensional_rectangle_has_square_constant() -> None:
    toolkit = exact_toolkit()
    rectangle = toolkit.canonical_hull([[0, 0, 0], [1, 1, 0], [1, 1, 2], [0, 0, 2]])

    assert rectangle.dim == 2
    assert toolkit.isotropy_constant(rectangle) == pytest.approx(12**-0.5)


def test_inertia_of_a_point_is_rejected() -> None:
    toolkit = exact_toolkit()

    with pytest.raises(DegeneratePolytope):
        toolkit.inertia(toolkit.canonical_hull([[1, 1]]))


def test_isotropic_position_has_unit_volume_and_centred_barycenter() -> None:
    toolkit = float_toolkit()
    body = toolkit.canonical_hull([[0, 0, 0], [3, 0, 0], [0, 2, 0], [0, 0, 1], [1, 1, 1]])

    iso = toolkit.isotropic_position(body)
    report = toolkit.inertia(iso)

    assert float(report.volume) == pytest.approx(1)
    assert np.allclose(report.barycenter, 0, atol=1e-9)
    assert np.allclose(report.chart_covariance, report.L**2 * np.eye(3))
    assert report.L == pytest.approx(toolkit.isotropy_constant(body))


@pytest.mark.parametrize("n", [2, 4, 9])
def test_radii_of_cross_polytope(n: int) -> None:
    toolkit = exact_toolkit()

    radii = toolkit.radii(toolkit.cross_polytope(n))

    assert float(radii["r"]) == pytest.approx(n**-0.5)
    assert radii["R"] == 1


def test_radii_of_four_dimensional_cross_polytope_are_rational() -> None:
    toolkit = exact_toolkit()

    radii = toolkit.radii(toolkit.cross_polytope(4))

    assert radii["r"] == Fraction(1, 2)


def test_radii_about_the_barycenter() -> None:
    toolkit = exact_toolkit()
    cube = toolkit.cube(3)

    with pytest.raises(OriginOutside):
        toolkit.radii(cube)

    radii = toolkit.radii(cube, about_barycenter=True)
    assert radii["r"] == Fraction(1, 2)
    assert float(radii["R"]) == pytest.approx(math.sqrt(3) / 2)


def test_hexagon_as_projection_of_cross_polytope() -> None:
    toolkit = exact_toolkit()
    hexagon = toolkit.canonical_hull([[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]])

    embedding = toolkit.embed_as_b1_projection(hexagon)
    source = toolkit.cross_polytope(embedding.subspace.ambient_dim)
    images = [embedding(v) for v in toolkit.project(source, embedding.subspace).vertices]

    assert embedding.subspace.dim == 2
    assert set(toolkit.canonical_hull(images).vertices) == set(hexagon.vertices)


def test_b1_embedding_preserves_isotropy_constant() -> None:
    toolkit = float_toolkit()
    body = toolkit.canonical_hull([[2, 0], [-2, 0], [2, 2], [-2, -2], [0, 3], [0, -3]])

    embedding = toolkit.embed_as_b1_projection(body)
    shadow = toolkit.project(toolkit.cross_polytope(embedding.subspace.ambient_dim), embedding.subspace)

    assert toolkit.isotropy_constant(shadow) == pytest.approx(toolkit.isotropy_constant(body))


def test_b1_embedding_requires_symmetric_body() -> None:
    toolkit = exact_toolkit()

    with pytest.raises(NotSymmetric):
        toolkit.embed_as_b1_projection(toolkit.canonical_hull(triangle_points()))


def test_quadrilateral_as_projection_of_simplex() -> None:
    toolkit = exact_toolkit()
    body = toolkit.canonical_hull([[0, 0], [2, 0], [3, 2], [0, 1]])

    embedding = toolkit.embed_as_simplex_projection(body)
    simplex = toolkit.standard_simplex(len(body.vertices) - 1)
    images = [embedding(v) for v in toolkit.project(simplex, embedding.subspace).vertices]

    assert all(sum(b) == 0 for b in embedding.subspace.basis)
    assert set(toolkit.canonical_hull(images).vertices) == set(body.vertices)


def test_rogers_shephard_equality_for_triangle() -> None:
    toolkit = exact_toolkit()

    result = toolkit.rogers_shephard(toolkit.canonical_hull(triangle_points()))

    assert result["ratio"] == 6
    assert result["bound"] == 6
    assert result["holds"]
    assert len(toolkit.minkowski_difference_body(toolkit.canonical_hull(triangle_points())).vertices) == 6


def test_rogers_shephard_for_square() -> None:
    toolkit = exact_toolkit()

    result = toolkit.rogers_shephard(toolkit.cube(2))

    assert result["ratio"] == 4
    assert result["holds"]


def test_deterministic_bound_for_square() -> None:
    toolkit = float_toolkit()

    value = toolkit.deterministic_bound_check(toolkit.cube(2))

    assert value == pytest.approx(12**-0.5 * math.sqrt(2 / 4))


def test_whitening_bound_holds_for_cube_and_simplex() -> None:
    toolkit = exact_toolkit()

    assert toolkit.whitening_bound(toolkit.cube(3))["holds"]
    assert toolkit.whitening_bound(toolkit.standard_simplex(3))["holds"]


def test_volume_radius_estimate_on_coordinate_subspace() -> None:
    toolkit = float_toolkit()

    estimate = toolkit.volume_radius_estimate(Subspace.coordinate(6, [0, 1, 2], toolkit.backend), samples=16, seed=1)

    assert estimate["holds"]
    assert estimate["ball_points_inside"] == 16
    assert estimate["volume_radius"] == pytest.approx((4 / 3) ** (1 / 3))


def monte_carlo_L(samples: np.ndarray, volume: float) -> float:
    n = samples.shape[1]
    covariance = np.cov(samples, rowvar=False)
    return float(np.linalg.det(covariance) ** (1 / (2 * n)) / volume ** (1 / n))


def test_isotropy_constant_matches_monte_carlo_on_cube() -> None:
    samples = np.random.default_rng(0).random((200_000, 3))

    assert float_toolkit().isotropy_constant(float_toolkit().cube(3)) == pytest.approx(
        monte_carlo_L(samples, 1.0), rel=1e-2
    )


def test_isotropy_constant_matches_monte_carlo_on_cross_polytope() -> None:
    box = np.random.default_rng(1).uniform(-1, 1, (300_000, 3))
    samples = box[np.abs(box).sum(axis=1) <= 1]

    assert float_toolkit().isotropy_constant(float_toolkit().cross_polytope(3)) == pytest.approx(
        monte_carlo_L(samples, 4 / 3), rel=1e-2
    )


def test_isotropy_constant_matches_monte_carlo_on_random_tetrahedron() -> None:
    rng = np.random.default_rng(2)
    vertices = rng.standard_normal((4, 3))
    samples = rng.dirichlet(np.ones(4), 200_000) @ vertices
    volume = abs(np.linalg.det(vertices[1:] - vertices[0])) / 6
    toolkit = float_toolkit()

    L = toolkit.isotropy_constant(toolkit.canonical_hull(vertices.tolist()))

    assert L == pytest.approx(monte_carlo_L(samples, volume), rel=1e-2)
