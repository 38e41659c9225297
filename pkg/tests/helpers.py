from __future__ import annotations

from typing import Any

from polyshadow.geometry.toolkit import Toolkit


def exact_toolkit(seed: int = 0) -> Toolkit:
    return Toolkit(backend="exact", seed=seed)


def float_toolkit(seed: int = 0, tolerance: float = 1e-9) -> Toolkit:
    return Toolkit(backend="float", seed=seed, tolerance=tolerance)


def triangle_points() -> list[list[int]]:
    return [[0, 0], [1, 0], [0, 1]]


def square_with_interior_points() -> list[list[Any]]:
    return [[0, 0], [2, 0], [2, 2], [0, 2], [1, 1], [1, 0], ["1/2", "3/2"]]


def polytope_payload() -> dict[str, Any]:
    return {
        "object": "polytope",
        "ambient_dim": 3,
        "vertices": [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]],
    }


def subspace_payload() -> dict[str, Any]:
    return {"object": "subspace", "ambient_dim": 3, "basis": [[1, 0, 0], [0, 1, 0]]}


def quadratic_payload() -> dict[str, Any]:
    return {
        "object": "quadratic_form",
        "c": "1/2",
        "b": [0, 1, 0],
        "A": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    }


def experiment_config_payload() -> dict[str, Any]:
    return {
        "object": "experiment_config",
        "n": 6,
        "d": [2, 3],
        "kind": "b1",
        "trials": 4,
        "seed": 7,
        "backend": "float",
    }
