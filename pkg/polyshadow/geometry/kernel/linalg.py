"""
Dense linear algebra over backend scalars.

Vectors are tuples, matrices are lists of rows. Everything here works unchanged for
`Fraction` and `float` entries. Exact reductions run on sympy's `DomainMatrix` over QQ;
float rank decisions go through ``backend.is_zero`` or a tolerance-scaled SVD.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from polyshadow.geometry.exceptions import RankDeficient

from .scalar import Backend, Measure, Scalar

Vector = tuple[Scalar, ...]
Matrix = list[list[Scalar]]


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    return sum((a * b for a, b in zip(u, v)), 0)


def add(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(v: Sequence[Scalar], factor: Scalar) -> Vector:
    return tuple(a * factor for a in v)


def neg(v: Sequence[Scalar]) -> Vector:
    return tuple(-a for a in v)


def norm2(v: Sequence[Scalar]) -> Scalar:
    return dot(v, v)


def zeros(n: int, backend: Backend) -> Vector:
    return tuple(backend.coerce(0) for _ in range(n))


def unit(n: int, i: int, backend: Backend) -> Vector:
    return tuple(backend.coerce(1 if j == i else 0) for j in range(n))


def identity(n: int, backend: Backend) -> Matrix:
    return [list(unit(n, i, backend)) for i in range(n)]


def centroid(points: Sequence[Sequence[Scalar]]) -> Vector:
    count = len(points)
    total = points[0]
    for point in points[1:]:
        total = add(total, point)
    return tuple(a / count for a in total)


def transpose(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    return [list(col) for col in zip(*rows)]


def matvec(rows: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> Vector:
    return tuple(dot(row, v) for row in rows)


def matmul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> Matrix:
    cols = transpose(b)
    return [[dot(row, col) for col in cols] for row in a]


def outer(u: Sequence[Scalar], v: Sequence[Scalar]) -> Matrix:
    return [[a * b for b in v] for a in u]


def mat_add(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Sequence[Sequence[Scalar]], factor: Scalar) -> Matrix:
    return [[x * factor for x in row] for row in a]


def trace_product(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> Scalar:
    """tr(A B) for symmetric B, i.e. the entrywise inner product."""
    return sum((x * y for ra, rb in zip(a, b) for x, y in zip(ra, rb)), 0)


def _magnitude(rows: Sequence[Sequence[Scalar]]) -> float:
    return max((abs(float(x)) for row in rows for x in row), default=0.0)


def _domain_matrix(rows: Sequence[Sequence[Scalar]]) -> DomainMatrix:
    entries = [[_pair(Fraction(x)) for x in row] for row in rows]
    return DomainMatrix.from_list(entries, QQ)


def _pair(value: Fraction) -> tuple[int, int]:
    return value.numerator, value.denominator


def _fraction(element: object) -> Fraction:
    return Fraction(int(element.numerator), int(element.denominator))  # type: ignore[attr-defined]


def rref(rows: Sequence[Sequence[Scalar]], backend: Backend) -> tuple[Matrix, list[int]]:
    """
    Reduced row echelon form.

    Exact matrices are reduced by sympy's ``DomainMatrix`` over QQ; float matrices by
    partial pivoting with tolerance-based zero tests.

    Returns:
        The reduced matrix (zero rows dropped) and the list of pivot columns.
    """
    if not rows or not rows[0]:
        return [], []
    if backend.exact:
        reduced, pivots = _domain_matrix(rows).rref()
        kept = reduced.to_list()[: len(pivots)]
        return [[_fraction(x) for x in row] for row in kept], list(pivots)
    matrix = [list(row) for row in rows]
    ncols = len(matrix[0])
    magnitude = _magnitude(matrix)
    pivots_found: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(matrix):
            break
        pivot = max(range(r, len(matrix)), key=lambda i: abs(matrix[i][c]))
        if backend.is_zero(matrix[pivot][c], magnitude):
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        lead = matrix[r][c]
        matrix[r] = [x / lead for x in matrix[r]]
        for i in range(len(matrix)):
            if i != r and matrix[i][c] != 0:
                factor = matrix[i][c]
                matrix[i] = [x - factor * y for x, y in zip(matrix[i], matrix[r])]
                matrix[i] = [0.0 if backend.is_zero(x, magnitude) else x for x in matrix[i]]
        pivots_found.append(c)
        r += 1
    return matrix[:r], pivots_found


def rank(rows: Sequence[Sequence[Scalar]], backend: Backend) -> int:
    if not rows or not rows[0]:
        return 0
    if backend.exact:
        return _domain_matrix(rows).rank()
    array = np.array(rows, dtype=float)
    return int(np.linalg.matrix_rank(array, tol=backend.tolerance * max(1.0, _magnitude(rows))))


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int, backend: Backend) -> list[Vector]:
    """Basis of {x : rows·x = 0}, one vector per free column."""
    if not rows:
        return [unit(ncols, i, backend) for i in range(ncols)]
    reduced, pivots = rref(rows, backend)
    free = [c for c in range(ncols) if c not in pivots]
    basis: list[Vector] = []
    for f in free:
        x = [backend.coerce(0)] * ncols
        x[f] = backend.coerce(1)
        for row, p in zip(reduced, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(a: Sequence[Sequence[Scalar]], b: Sequence[Scalar], backend: Backend) -> Vector:
    """Unique solution of a·x = b; raises RankDeficient otherwise."""
    ncols = len(a[0])
    augmented = [list(row) + [rhs] for row, rhs in zip(a, b)]
    reduced, pivots = rref(augmented, backend)
    if ncols in pivots:
        raise RankDeficient("linear system is inconsistent", {"rows": len(a), "cols": ncols})
    if len(pivots) < ncols:
        raise RankDeficient("linear system is underdetermined", {"rank": len(pivots), "cols": ncols})
    x = [backend.coerce(0)] * ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[-1]
    return tuple(x)


def det(a: Sequence[Sequence[Scalar]], backend: Backend) -> Scalar:
    """Determinant; exact via ``DomainMatrix``, float by elimination with partial pivoting."""
    n = len(a)
    if n == 0:
        return backend.coerce(1)
    if backend.exact:
        return _fraction(_domain_matrix(a).det())
    matrix = [list(row) for row in a]
    magnitude = _magnitude(matrix)
    result = backend.coerce(1)
    for c in range(n):
        pivot = max(range(c, n), key=lambda i: abs(matrix[i][c]))
        if backend.is_zero(matrix[pivot][c], magnitude):
            return backend.coerce(0)
        if pivot != c:
            matrix[c], matrix[pivot] = matrix[pivot], matrix[c]
            result = -result
        lead = matrix[c][c]
        result = result * lead
        for i in range(c + 1, n):
            factor = matrix[i][c] / lead
            if factor != 0:
                matrix[i] = [x - factor * y for x, y in zip(matrix[i], matrix[c])]
    return result


def inverse(a: Sequence[Sequence[Scalar]], backend: Backend) -> Matrix:
    n = len(a)
    augmented = [list(row) + list(unit(n, i, backend)) for i, row in enumerate(a)]
    reduced, pivots = rref(augmented, backend)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        raise RankDeficient("matrix is singular", {"size": n})
    return [row[n:] for row in reduced]


def gram_schmidt(
    vectors: Sequence[Sequence[Scalar]],
    backend: Backend,
    normalize: Optional[bool] = None,
    pivoting: bool = False,
) -> list[Vector]:
    """
    Orthogonal basis of span(vectors).

    Dependent vectors are skipped. With ``pivoting`` the vector with the largest residual
    is taken next, which makes the basis independent of small input perturbations.
    Normalisation defaults to on in float mode and off in exact mode.
    """
    if normalize is None:
        normalize = not backend.exact
    remaining = [tuple(v) for v in vectors]
    magnitude = max((float(norm2(v)) for v in remaining), default=0.0)
    basis: list[Vector] = []
    norms: list[Scalar] = []

    def residual(v: Vector) -> Vector:
        for b, nb in zip(basis, norms):
            coefficient = dot(v, b) / nb
            if coefficient != 0:
                v = sub(v, scale(b, coefficient))
        return v

    ambient = len(remaining[0]) if remaining else 0
    while remaining and len(basis) < ambient:
        if pivoting:
            residuals = [residual(v) for v in remaining]
            index = max(range(len(residuals)), key=lambda i: norm2(residuals[i]))
            candidate = residuals[index]
            remaining.pop(index)
        else:
            candidate = residual(remaining.pop(0))
        size = norm2(candidate)
        if backend.is_zero(size, magnitude):
            if pivoting:
                break
            continue
        basis.append(candidate)
        norms.append(size)
    if normalize:
        return [scale(b, 1 / math.sqrt(float(nb))) for b, nb in zip(basis, norms)]
    return basis


def orthogonal_complement(
    vectors: Sequence[Sequence[Scalar]], n: int, backend: Backend
) -> list[Vector]:
    return gram_schmidt(nullspace([list(v) for v in vectors], n, backend), backend)


@dataclass(frozen=True)
class Chart:
    """
    Affine coordinates on an affine subspace.

    ``basis`` is orthogonal (orthonormal in float mode). Coordinates of x are
    ⟨b_i, x − origin⟩ / ⟨b_i, b_i⟩, so chart measures scale by √(Π ⟨b_i, b_i⟩).
    """

    origin: Vector
    basis: tuple[Vector, ...]
    norms2: tuple[Scalar, ...]

    @classmethod
    def through(cls, points: Sequence[Vector], backend: Backend) -> "Chart":
        origin = tuple(points[0])
        directions = [sub(p, origin) for p in points[1:]]
        basis = tuple(gram_schmidt(directions, backend))
        return cls(origin, basis, tuple(norm2(b) for b in basis))

    @classmethod
    def linear(cls, basis: Sequence[Vector], backend: Backend) -> "Chart":
        n = len(basis[0])
        return cls(zeros(n, backend), tuple(basis), tuple(norm2(b) for b in basis))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return len(self.origin)

    def coords(self, x: Sequence[Scalar]) -> Vector:
        shifted = sub(x, self.origin)
        return tuple(dot(b, shifted) / nb for b, nb in zip(self.basis, self.norms2))

    def lift(self, c: Sequence[Scalar]) -> Vector:
        point = self.origin
        for coefficient, b in zip(c, self.basis):
            point = add(point, scale(b, coefficient))
        return point

    def lift_direction(self, c: Sequence[Scalar]) -> Vector:
        """Ambient vector whose inner product with x − origin equals ⟨c, coords(x)⟩."""
        direction = tuple(0 * x for x in self.origin)
        for coefficient, b, nb in zip(c, self.basis, self.norms2):
            direction = add(direction, scale(b, coefficient / nb))
        return direction

    def gram_det(self) -> Scalar:
        result: Scalar = 1
        for nb in self.norms2:
            result = result * nb
        return result

    def measure_scale(self, backend: Backend) -> Measure:
        return backend.sqrt(self.gram_det())
