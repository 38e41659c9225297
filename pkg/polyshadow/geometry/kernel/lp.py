"""
Dense two-phase simplex method with Bland's rule.

Solves ``min cᵀx  s.t.  A x = b, x ≥ 0`` over backend scalars. The programs built by
the cone and shadow code have at most a few dozen columns, so a tableau is plenty.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal, Optional

from polyshadow.geometry.exceptions import InfeasibleProgram

from .linalg import Vector, dot
from .scalar import Backend, Scalar

logger = logging.getLogger(__name__)

Status = Literal["optimal", "infeasible", "unbounded"]


@dataclass(frozen=True)
class LPResult:
    status: Status
    x: Optional[Vector] = None
    value: Optional[Scalar] = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"

    def require_optimal(self) -> "LPResult":
        """
        Return the result of a program that must have an optimum.

        Raises:
            InfeasibleProgram: If the program is infeasible or unbounded.
        """
        if self.status != "optimal":
            raise InfeasibleProgram(f"linear program is {self.status}", {"status": self.status})
        return self


class _Tableau:
    def __init__(self, rows: list[list[Scalar]], basis: list[int], backend: Backend) -> None:
        self.rows = rows
        self.basis = basis
        self.backend = backend
        self.magnitude = max((abs(float(x)) for row in rows for x in row), default=1.0)

    def pivot(self, r: int, c: int) -> None:
        lead = self.rows[r][c]
        self.rows[r] = [x / lead for x in self.rows[r]]
        pivot_row = self.rows[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            factor = row[c]
            if factor != 0:
                self.rows[i] = [x - factor * y for x, y in zip(row, pivot_row)]
        if r < len(self.basis):
            self.basis[r] = c

    def run(self, ncols: int) -> Status:
        """Iterate on the last row as objective until optimal or unbounded."""
        constraints = len(self.basis)
        while True:
            objective = self.rows[-1]
            entering = next(
                (j for j in range(ncols) if self.backend.sign(objective[j], self.magnitude) < 0),
                None,
            )
            if entering is None:
                return "optimal"
            leaving: Optional[int] = None
            best: Optional[Scalar] = None
            for i in range(constraints):
                a = self.rows[i][entering]
                if self.backend.sign(a, self.magnitude) <= 0:
                    continue
                ratio = self.rows[i][-1] / a
                if best is None or ratio < best and not self._tie(ratio, best):
                    leaving, best = i, ratio
                elif self._tie(ratio, best) and self.basis[i] < self.basis[leaving]:  # type: ignore[index]
                    leaving = i
            if leaving is None:
                return "unbounded"
            self.pivot(leaving, entering)

    def _tie(self, a: Scalar, b: Scalar) -> bool:
        if self.backend.exact:
            return a == b
        return self.backend.is_zero(a - b, max(abs(float(a)), abs(float(b))))


def minimize(
    c: Sequence[Scalar],
    a_eq: Sequence[Sequence[Scalar]],
    b_eq: Sequence[Scalar],
    backend: Backend,
) -> LPResult:
    """
    Minimise ``cᵀx`` subject to ``a_eq·x = b_eq`` and ``x ≥ 0``.

    Returns:
        LPResult with status "optimal" (and x, value), "infeasible" or "unbounded".
    """
    n = len(c)
    zero = backend.coerce(0)
    one = backend.coerce(1)
    rows: list[list[Scalar]] = []
    for row, rhs in zip(a_eq, b_eq):
        row = list(row)
        if rhs < 0:
            row, rhs = [-x for x in row], -rhs
        rows.append(row + [rhs])
    m = len(rows)

    # Phase one: artificial variables n..n+m-1 start in the basis.
    tableau_rows = [
        row[:n] + [one if j == i else zero for j in range(m)] + [row[-1]]
        for i, row in enumerate(rows)
    ]
    phase_one = [-sum((row[j] for row in rows), zero) for j in range(n)] + [zero] * m
    phase_one.append(-sum((row[-1] for row in rows), zero))
    tableau = _Tableau(tableau_rows + [phase_one], list(range(n, n + m)), backend)
    tableau.run(n + m)

    residual = -tableau.rows[-1][-1]
    rhs_scale = max((abs(float(row[-1])) for row in rows), default=1.0)
    if not backend.is_zero(residual, rhs_scale):
        logger.debug("lp infeasible: phase one residual %s", residual)
        return LPResult("infeasible")

    # Drive remaining artificials out of the basis, dropping redundant rows.
    i = 0
    while i < len(tableau.basis):
        if tableau.basis[i] >= n:
            column = next(
                (j for j in range(n) if not backend.is_zero(tableau.rows[i][j], tableau.magnitude)),
                None,
            )
            if column is None:
                del tableau.rows[i]
                del tableau.basis[i]
                continue
            tableau.pivot(i, column)
        i += 1

    constraint_rows = [row[:n] + [row[-1]] for row in tableau.rows[:-1]]
    objective = list(c) + [zero]
    for row, var in zip(constraint_rows, tableau.basis):
        coefficient = c[var]
        if coefficient != 0:
            objective = [x - coefficient * y for x, y in zip(objective, row)]
    phase_two = _Tableau(constraint_rows + [objective], tableau.basis, backend)
    status = phase_two.run(n)
    if status == "unbounded":
        return LPResult("unbounded")

    x = [zero] * n
    for row, var in zip(phase_two.rows[:-1], phase_two.basis):
        x[var] = row[-1]
    solution = tuple(x)
    return LPResult("optimal", solution, dot(c, solution))


def maximize(
    c: Sequence[Scalar],
    a_eq: Sequence[Sequence[Scalar]],
    b_eq: Sequence[Scalar],
    backend: Backend,
) -> LPResult:
    result = minimize([-x for x in c], a_eq, b_eq, backend)
    if result.status != "optimal":
        return result
    return LPResult("optimal", result.x, -result.value)  # type: ignore[operator]


def feasible(
    a_eq: Sequence[Sequence[Scalar]],
    b_eq: Sequence[Scalar],
    backend: Backend,
) -> bool:
    """Whether ``{x ≥ 0 : a_eq·x = b_eq}`` is non-empty."""
    if not a_eq:
        return True
    n = len(a_eq[0])
    return minimize([backend.coerce(0)] * n, a_eq, b_eq, backend).feasible


def conic_combination(
    generators: Sequence[Sequence[Scalar]],
    target: Sequence[Scalar],
    backend: Backend,
) -> bool:
    """Whether ``target = Σ λ_i g_i`` for some λ ≥ 0."""
    if not generators:
        return all(backend.is_zero(t) for t in target)
    a_eq = [list(row) for row in zip(*generators)]
    return feasible(a_eq, list(target), backend)


def convex_combination(
    points: Sequence[Sequence[Scalar]],
    target: Sequence[Scalar],
    backend: Backend,
) -> bool:
    """Whether ``target`` lies in conv(points)."""
    a_eq = [list(row) for row in zip(*points)]
    a_eq.append([backend.coerce(1)] * len(points))
    return feasible(a_eq, list(target) + [backend.coerce(1)], backend)
