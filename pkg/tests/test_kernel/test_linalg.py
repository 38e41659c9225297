from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from polyshadow.geometry.exceptions import RankDeficient
from polyshadow.geometry.kernel.linalg import det, inverse, nullspace, rank, rref, solve
from polyshadow.geometry.kernel.scalar import make_backend


def test_exact_rref_drops_zero_rows_and_returns_fractions() -> None:
    backend = make_backend("exact")

    reduced, pivots = rref(backend.matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]]), backend)

    assert pivots == [0, 1]
    assert reduced == [[1, 0, 1], [0, 1, 1]]
    assert all(isinstance(x, Fraction) for row in reduced for x in row)


def test_exact_det_of_hilbert_matrix() -> None:
    backend = make_backend("exact")
    hilbert = [[Fraction(1, i + j + 1) for j in range(3)] for i in range(3)]

    assert det(hilbert, backend) == Fraction(1, 2160)
    assert det([], backend) == 1


def test_exact_solve_inverse_and_nullspace() -> None:
    backend = make_backend("exact")
    a = backend.matrix([[2, 1], [1, 3]])

    assert solve(a, backend.vector([3, 5]), backend) == (Fraction(4, 5), Fraction(7, 5))
    assert inverse(a, backend) == [[Fraction(3, 5), Fraction(-1, 5)], [Fraction(-1, 5), Fraction(2, 5)]]
    assert nullspace(backend.matrix([[1, 2, 3], [1, 0, 1]]), 3, backend) == [(-1, -1, 1)]


def test_singular_systems_raise_rank_deficient() -> None:
    backend = make_backend("exact")

    with pytest.raises(RankDeficient):
        inverse(backend.matrix([[1, 2], [2, 4]]), backend)
    with pytest.raises(RankDeficient):
        solve(backend.matrix([[1, 2], [2, 4]]), backend.vector([1, 1]), backend)


@pytest.mark.parametrize("seed", range(20))
def test_float_rank_agrees_with_exact_rank(seed: int) -> None:
    rng = np.random.default_rng(seed)
    rows = rng.integers(-5, 6, size=(3, 5)).tolist()
    rows.append([a + 2 * b for a, b in zip(rows[0], rows[1])])
    exact, floating = make_backend("exact"), make_backend("float")

    assert rank(exact.matrix(rows), exact) == rank(floating.matrix(rows), floating)
    assert rank(exact.matrix(rows), exact) <= 3
