from __future__ import annotations

import math
from fractions import Fraction

import pytest

from polyshadow.geometry.exceptions import DegenerateSimplex, DimensionMismatch
from polyshadow.models.quadratic import QuadraticForm
from tests.helpers import exact_toolkit, float_toolkit, quadratic_payload


@pytest.mark.parametrize(
    ("builder", "dim", "expected"),
    [
        ("cube", 3, Fraction(1)),
        ("cross_polytope", 2, Fraction(2)),
        ("cross_polytope", 3, Fraction(4, 3)),
        ("cross_polytope", 4, Fraction(2, 3)),
    ],
)
def test_exact_volumes(builder: str, dim: int, expected: Fraction) -> None:
    toolkit = exact_toolkit()

    assert toolkit.volume(getattr(toolkit, builder)(dim)) == expected


def test_triangulation_of_octahedron_sums_to_its_volume() -> None:
    toolkit = exact_toolkit()
    octahedron = toolkit.cross_polytope(3)

    total = sum(
        toolkit.simplex_volume([octahedron.vertices[i] for i in simplex])
        for simplex in toolkit.triangulate(octahedron)
    )

    assert total == Fraction(4, 3)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_regular_simplex_volume(d: int) -> None:
    toolkit = float_toolkit()

    volume = toolkit.volume(toolkit.regular_simplex(d))

    assert volume == pytest.approx(math.sqrt(d + 1) / math.factorial(d))


def test_volume_of_lower_dimensional_triangle_is_exact_surd() -> None:
    toolkit = exact_toolkit()
    triangle = toolkit.canonical_hull([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    volume = toolkit.volume(triangle)

    assert toolkit.backend.equal(volume, toolkit.simplex_volume(triangle.vertices))
    assert float(volume) == pytest.approx(math.sqrt(3) / 2)


def test_simplex_volume_rejects_affinely_dependent_vertices() -> None:
    with pytest.raises(DegenerateSimplex):
        exact_toolkit().simplex_volume([[0, 0], [1, 1], [2, 2]])


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5, 6])
def test_mean_square_norm_on_standard_simplex(d: int) -> None:
    toolkit = exact_toolkit()
    simplex = toolkit.standard_simplex(d)

    mean = toolkit.kernel.mean_value(simplex, QuadraticForm.norm2(d + 1, toolkit.backend))

    assert mean == Fraction(2, d + 2)


def test_simplex_second_moment_of_unit_segment() -> None:
    barycenter, moment = exact_toolkit().simplex_second_moment([[0], [1]])

    assert barycenter == (Fraction(1, 2),)
    assert moment == [[Fraction(1, 3)]]


def test_simplex_second_moment_trace_for_unit_vertices() -> None:
    toolkit = exact_toolkit()
    vertices = [[1, 0, 0], [0, 1, 0], ["3/5", "4/5", 0]]

    _, moment = toolkit.simplex_second_moment(vertices)

    cross = Fraction(3, 5) + Fraction(4, 5)
    d = 2
    expected = Fraction(2, d + 2) + Fraction(2, (d + 1) * (d + 2)) * cross
    assert sum(moment[i][i] for i in range(3)) == expected


def test_simplex_second_moment_rejects_degenerate_simplex() -> None:
    with pytest.raises(DegenerateSimplex):
        exact_toolkit().simplex_second_moment([[0, 0], [1, 0], [2, 0]])


def test_integrate_quadratic_over_unit_cube() -> None:
    toolkit = exact_toolkit()
    cube = toolkit.cube(3)

    assert toolkit.integrate_quadratic(cube, QuadraticForm.norm2(3, toolkit.backend)) == 1
    assert toolkit.integrate_quadratic(cube, QuadraticForm.const(3, toolkit.backend, 5)) == 5
    assert toolkit.integrate_quadratic(
        cube, QuadraticForm.load(quadratic_payload(), toolkit.backend)
    ) == Fraction(1, 2) + Fraction(1, 2) + 1


def test_integrate_quadratic_rejects_dimension_mismatch() -> None:
    toolkit = exact_toolkit()

    with pytest.raises(DimensionMismatch):
        toolkit.integrate_quadratic(toolkit.cube(2), QuadraticForm.norm2(3, toolkit.backend))


def test_affine_image_scales_volume_by_determinant() -> None:
    toolkit = exact_toolkit()

    image = toolkit.apply_affine(toolkit.cube(2), [[2, 1], [0, 3]], [5, -1])

    assert toolkit.volume(image) == 6
