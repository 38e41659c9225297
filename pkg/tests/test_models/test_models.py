from __future__ import annotations

from fractions import Fraction

import pytest

from polyshadow.geometry.exceptions import DimensionMismatch, PolyshadowValidationError, RankDeficient
from polyshadow.geometry.kernel.scalar import make_backend
from polyshadow.models import (
    Cone,
    ExperimentConfig,
    ExperimentRecord,
    GenericDirection,
    Polytope,
    QuadraticForm,
    Subspace,
    get_loader,
    load_object,
)
from tests.helpers import (
    experiment_config_payload,
    polytope_payload,
    quadratic_payload,
    subspace_payload,
)


def test_polytope_props_round_trip_through_to_dict() -> None:
    backend = make_backend("exact")

    polytope = Polytope.load(polytope_payload(), backend)

    assert polytope.to_dict() == {**polytope_payload(), "vertices": polytope_payload()["vertices"]}
    assert polytope.dim == 3
    assert polytope.f_vector() == (6, 12, 8)


def test_polytope_to_dict_encodes_rationals_as_strings() -> None:
    backend = make_backend("exact")

    polytope = Polytope.from_points([[0, 0], ["1/2", 0], [0, "1/3"]], backend)

    assert polytope.to_dict()["vertices"] == [[0, 0], ["1/2", 0], [0, "1/3"]]


def test_load_object_dispatches_on_object_tag() -> None:
    backend = make_backend("exact")

    assert isinstance(load_object(polytope_payload(), backend), Polytope)
    assert isinstance(load_object(subspace_payload(), backend), Subspace)
    assert isinstance(load_object(quadratic_payload(), backend), QuadraticForm)
    assert load_object({"object": "unknown", "x": 1}, backend) == {"object": "unknown", "x": 1}
    assert load_object({"x": 1}, backend) == {"x": 1}


def test_get_loader_covers_cones_and_directions() -> None:
    backend = make_backend("exact")

    cone = get_loader("cone")({"ambient_dim": 2, "generators": [[1, 0], [0, 0]]}, backend)
    direction = get_loader("generic_direction")(
        {"u": ["1/2", 0], "certificate": [{"face": [0, 1], "dim": 0}]}, backend
    )

    assert isinstance(cone, Cone)
    assert len(cone) == 1
    assert isinstance(direction, GenericDirection)
    assert direction.u == (Fraction(1, 2), Fraction(0))
    assert direction.certificate == (((0, 1), 0),)


def test_cone_rejects_generators_of_the_wrong_length() -> None:
    with pytest.raises(DimensionMismatch):
        Cone(3, [(1, 0)], make_backend("float"))


def test_subspace_span_orthogonalises_and_drops_dependent_vectors() -> None:
    backend = make_backend("exact")

    subspace = Subspace.span([[1, 1, 0], [2, 2, 0], [1, 0, 0]], backend)

    assert subspace.dim == 2
    first, second = subspace.basis
    assert sum(a * b for a, b in zip(first, second)) == 0
    assert subspace.project([1, 2, 3]) == (1, 2, 0)
    assert subspace.complement().basis == ((0, 0, 1),)


def test_subspace_rejects_bad_input() -> None:
    backend = make_backend("exact")

    with pytest.raises(RankDeficient):
        Subspace.span([[0, 0, 0]], backend)

    with pytest.raises(DimensionMismatch):
        Subspace.coordinate(3, [3], backend)

    with pytest.raises(DimensionMismatch):
        Subspace.load({"ambient_dim": 4, "basis": [[1, 0, 0]]}, backend)


def test_quadratic_form_evaluation_and_composition() -> None:
    backend = make_backend("exact")

    f = QuadraticForm.load(quadratic_payload(), backend)
    pulled = f.compose([[1, 0, 0], [0, 0, 0], [0, 0, 0]])

    assert f([1, 2, 3]) == Fraction(1, 2) + 2 + 14
    assert pulled([1, 2, 3]) == Fraction(1, 2) + 1
    assert f.to_dict()["c"] == "1/2"


def test_quadratic_form_requires_symmetric_matrix() -> None:
    with pytest.raises(PolyshadowValidationError):
        QuadraticForm.load({"A": [[1, 2], [0, 1]]}, make_backend("exact"))

    with pytest.raises(PolyshadowValidationError):
        QuadraticForm.load({"c": 1}, make_backend("exact"))


def test_experiment_config_expands_dimension_list() -> None:
    config = ExperimentConfig.load(experiment_config_payload())

    assert config.ds == (2, 3)
    assert config.m == 12
    assert config.total_trials == 8
    assert [config.trial_dim(t) for t in (0, 3, 4, 7)] == [2, 2, 3, 3]
    assert ExperimentConfig.load(config.to_dict()).to_dict() == config.to_dict()


def test_experiment_config_fixes_vertex_counts_for_standard_bodies() -> None:
    simplex = ExperimentConfig(n=5, d=2, kind="simplex", symmetric=True)
    sphere = ExperimentConfig(n=5, d=2, kind="sphere", m=9, symmetric=False)

    assert simplex.m == 6
    assert simplex.symmetric is False
    assert sphere.m == 9


@pytest.mark.parametrize(
    "overrides",
    [
        {"kind": "cube"},
        {"d": 6},
        {"d": []},
        {"trials": 0},
        {"seed": -1},
        {"backend": "decimal"},
        {"workers": 0},
        {"cross_check_every": -1},
        {"kind": "sphere", "m": 3},
    ],
)
def test_experiment_config_rejects_invalid_values(overrides: dict[str, object]) -> None:
    props = {**experiment_config_payload(), **overrides}

    with pytest.raises((ValueError, PolyshadowValidationError)):
        ExperimentConfig.load(props)


def test_experiment_record_row_matches_csv_columns() -> None:
    record = ExperimentRecord(3, 42, 6, 2, 12, 0.25, 0.125, 0.5, 0.0)

    assert record.to_row() == ["3", "42", "6", "2", "12", "0.25", "0.125", "0.5", "0.0", "0.0"]
    assert ExperimentRecord.load(record.to_dict()).to_dict() == record.to_dict()
