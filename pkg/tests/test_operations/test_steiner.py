from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from polyshadow.geometry.exceptions import (
    DegenerateBody,
    DimensionUnsupported,
    EmptySection,
    NotIsotropicInput,
    PolyshadowValidationError,
    PreconditionViolated,
)
from tests.helpers import exact_toolkit, float_toolkit


def test_steiner_symmetrize_triangle_centres_vertical_chords() -> None:
    toolkit = exact_toolkit()
    triangle = toolkit.canonical_hull([[0, 0], [2, 0], [0, 2]])

    result = toolkit.steiner_symmetrize(triangle, [0, 1])

    assert set(result.output.vertices) == {(0, 1), (0, -1), (2, 0)}
    assert toolkit.volume(result.output) == 2
    assert result.volume_in == result.volume_out


def test_steiner_symmetrize_cube_along_axis_is_identity() -> None:
    toolkit = exact_toolkit()

    result = toolkit.steiner_symmetrize(toolkit.cube(3), [1, 0, 0])

    assert result.sigma_squared == 1
    assert result.L_out == pytest.approx(result.L_in)
    assert toolkit.f_vector(result.output) == (8, 12, 6)


@pytest.mark.parametrize("d", [1, 5])
def test_steiner_symmetrize_rejects_unsupported_dimension(d: int) -> None:
    toolkit = exact_toolkit()

    with pytest.raises(DimensionUnsupported):
        toolkit.steiner_symmetrize(toolkit.cube(d), [1] + [0] * (d - 1))


def test_steiner_symmetrize_rejects_flat_body() -> None:
    toolkit = exact_toolkit()
    triangle = toolkit.canonical_hull([[0, 0, 0], [1, 0, 0], [0, 1, 0]])

    with pytest.raises(DegenerateBody):
        toolkit.steiner_symmetrize(triangle, [0, 0, 1])


def test_steiner_symmetrize_rejects_zero_direction() -> None:
    toolkit = exact_toolkit()

    with pytest.raises(PolyshadowValidationError):
        toolkit.steiner_symmetrize(toolkit.cube(2), [0, 0])


def test_steiner_symmetrize_generic_body_decreases_inertia() -> None:
    toolkit = exact_toolkit()
    body = toolkit.canonical_hull([[0, 0, 0], [2, 0, 0], [0, 3, 0], [0, 0, 1], [1, 1, 2]])

    result = toolkit.steiner_symmetrize(body, [0, 1, 1])

    assert result.volume_out == result.volume_in
    assert float(result.sigma_squared) <= 1
    assert result.L_out <= result.L_in * (1 + 1e-12)
    assert result.identity_residual < 1e-9


def test_steiner_inertia_checks_pass_for_isotropic_cube() -> None:
    toolkit = float_toolkit()
    cube = toolkit.isotropic_position(toolkit.cube(3))

    result = toolkit.steiner_symmetrize(cube, [1, 2, 2])
    checks = toolkit.steiner_inertia_checks(result, directions=4, seed=3)

    assert checks["passed"]
    assert len(checks["orthogonal_moments"]) == 4
    assert checks["mixed_residual"] < 1e-8
    assert float(checks["sigma_squared"]) <= 1 + 1e-8


def test_steiner_inertia_checks_on_random_tetrahedron() -> None:
    toolkit = float_toolkit()
    points = np.random.default_rng(7).standard_normal((4, 3)).tolist()
    tetrahedron = toolkit.isotropic_position(toolkit.canonical_hull(points))

    result = toolkit.steiner_symmetrize(tetrahedron, [1, -1, 2])
    checks = toolkit.steiner_inertia_checks(result, directions=4, seed=1)

    assert checks["projection_equals_section"]
    assert checks["reflection_symmetric"]
    assert checks["section_volume_ratio"] == pytest.approx(1.0)
    assert checks["passed"]


def test_steiner_inertia_checks_on_sheared_prism() -> None:
    toolkit = float_toolkit()
    prism = toolkit.canonical_hull([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 0, 2], [2, 0, 2], [1, 1, 2]])
    body = toolkit.isotropic_position(prism)

    result = toolkit.steiner_symmetrize(body, [1, 2, 2])
    checks = toolkit.steiner_inertia_checks(result, directions=4, seed=2)

    assert float(result.sigma_squared) < 1
    assert result.L_out < result.L_in
    assert checks["projection_equals_section"]
    assert checks["reflection_symmetric"]
    assert checks["section_volume_ratio"] == pytest.approx(1.0)
    assert checks["passed"]


def test_symmetral_of_asymmetric_body_is_reflection_symmetric_but_input_is_not() -> None:
    toolkit = exact_toolkit()
    triangle = toolkit.canonical_hull([[0, 0], [2, 0], [0, 2]])

    result = toolkit.steiner_symmetrize(triangle, [0, 1])

    assert toolkit.steiner._reflection_symmetric(result.output, result.direction)
    assert not toolkit.steiner._reflection_symmetric(triangle, result.direction)


def test_steiner_inertia_checks_reject_non_isotropic_input() -> None:
    toolkit = exact_toolkit()
    result = toolkit.steiner_symmetrize(toolkit.cube(3), [1, 0, 0])

    with pytest.raises(NotIsotropicInput):
        toolkit.steiner_inertia_checks(result)


def test_hensley_ratio_centred_cube() -> None:
    toolkit = exact_toolkit()
    cube = toolkit.cube(3, "-1/2", "1/2")

    axis = toolkit.hensley_ratio(cube, [1, 0, 0])
    diagonal = toolkit.hensley_ratio(cube, [1, 1, 0])

    assert axis == pytest.approx(12**-0.5)
    assert diagonal == pytest.approx(6**-0.5)
    assert toolkit.steiner.hensley_in_interval(axis)
    assert toolkit.steiner.hensley_in_interval(diagonal)


def test_hensley_ratio_requires_centred_body() -> None:
    toolkit = exact_toolkit()

    with pytest.raises(PreconditionViolated):
        toolkit.hensley_ratio(toolkit.cube(3), [1, 0, 0])


def test_hyperplane_section_of_cube_is_hexagon() -> None:
    toolkit = exact_toolkit()

    section = toolkit.hyperplane_section(toolkit.cube(3), [1, 1, 1], Fraction(3, 2))

    assert section.dim == 2
    assert len(section.vertices) == 6
    assert all(sum(v) == Fraction(3, 2) for v in section.vertices)


def test_hyperplane_section_missing_body_raises() -> None:
    toolkit = exact_toolkit()

    with pytest.raises(EmptySection):
        toolkit.hyperplane_section(toolkit.cube(3), [1, 1, 1], 4)


def test_projection_section_comparison_centred_cube() -> None:
    toolkit = exact_toolkit()
    cube = toolkit.cube(3, "-1/2", "1/2")

    report = toolkit.projection_section_comparison(cube, [0, 0, 1])

    assert report["ratio"] == pytest.approx(1.0)
    assert report["ratio_in_interval"]
    assert report["L_section"] == pytest.approx(12**-0.5)
    assert report["lower_mixed"] == pytest.approx(1.0)
    assert report["upper_mixed"] == pytest.approx(1 / 3)
    assert report["lower_mixed_holds"]
    assert report["upper_mixed_holds"]
    assert report["circumradius_chain"]
    assert report["inradius_chain"]


def test_hensley_ratio_of_unit_area_diamond() -> None:
    toolkit = float_toolkit()
    half = 0.5**0.5
    diamond = toolkit.apply_affine(toolkit.cross_polytope(2), [[half, 0], [0, half]])

    ratio = toolkit.hensley_ratio(diamond, [1, 0])

    assert ratio == pytest.approx(6**-0.5)
    assert ratio == pytest.approx(0.408, abs=1e-3)
    assert toolkit.steiner.hensley_in_interval(ratio)
    assert toolkit.hensley_ratio(diamond, [1, 1]) == pytest.approx(12**-0.5)
