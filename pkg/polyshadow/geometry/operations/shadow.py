import logging
from collections.abc import Sequence
from itertools import combinations
from typing import Any, Optional, Union

from polyshadow.geometry.constants import TILING_ALL_PAIRS_LIMIT, TILING_SAMPLED_PAIRS
from polyshadow.geometry.context import Context
from polyshadow.geometry.exceptions import DegenerateProjection, DimensionMismatch, NonGenericDirection
from polyshadow.geometry.kernel import lp
from polyshadow.geometry.kernel.linalg import (
    Matrix,
    add,
    det,
    mat_add,
    mat_scale,
    matmul,
    matvec,
    rank,
    scale,
    sub,
)
from polyshadow.geometry.kernel.scalar import Measure, measure_difference, scale_measure
from polyshadow.geometry.operations.cones import ConeOperations
from polyshadow.geometry.operations.isotropy import IsotropyOperations
from polyshadow.geometry.operations.kernel import KernelOperations, Moments
from polyshadow.geometry.types import MomentBound, PairVerdict, ProjectionLBound, TilingReport
from polyshadow.geometry.utils import validate_subspace_dim
from polyshadow.models.cone import GenericDirection
from polyshadow.models.inertia import InertiaReport
from polyshadow.models.polytope import Face, Polytope
from polyshadow.models.quadratic import QuadraticForm
from polyshadow.models.shadow import ShadowDecomposition, ShadowFace
from polyshadow.models.subspace import Subspace

logger = logging.getLogger(__name__)

DirectionLike = Union[GenericDirection, Sequence[Any], None]


class ShadowOperations:
    """
    Tilings of P_E K by projected d-faces and integration over P_E K through them.

    A d-face F belongs to the tiling when u lies in the projection of N(K, F) onto E⊥;
    for generic u these projections tile P_E K with disjoint relative interiors.
    """

    def __init__(
        self,
        context: Context,
        kernel: KernelOperations,
        cones: ConeOperations,
        isotropy: IsotropyOperations,
    ) -> None:
        self.context = context
        self.kernel = kernel
        self.cones = cones
        self.isotropy = isotropy

    @property
    def backend(self) -> Any:
        return self.context.backend

    def _direction(self, polytope: Polytope, subspace: Subspace, direction: DirectionLike) -> GenericDirection:
        if direction is None:
            return self.cones.generic_direction(polytope, subspace)
        if not isinstance(direction, GenericDirection):
            direction = GenericDirection(self.backend.vector(direction), [], 0)
        if len(direction.u) != polytope.ambient_dim:
            raise DimensionMismatch("direction and polytope live in different dimensions")
        if all(self.backend.is_zero(x) for x in direction.u):
            raise NonGenericDirection("direction is zero")
        if not subspace.is_orthogonal_to(direction.u):
            raise NonGenericDirection("direction is not orthogonal to the subspace")
        return direction

    def shadow_faces(
        self,
        polytope: Polytope,
        subspace: Subspace,
        direction: DirectionLike = None,
        verify_direction: Optional[bool] = None,
    ) -> ShadowDecomposition:
        """
        The d-faces F with u ∈ P_{E⊥} N(K, F), with exact face and shadow volumes.

        ``direction`` is sampled when omitted. A direction supplied as a plain vector has
        its genericity certificate recomputed unless ``verify_direction`` is False; a
        ``GenericDirection`` from ``generic_direction`` is trusted unless it is True.

        Raises:
            DimensionMismatch: If E and P live in different spaces.
            DegenerateProjection: If dim P_E P < d.
            NonGenericDirection: If u is not a generic direction for (P, E).
        """
        n = polytope.ambient_dim
        if subspace.ambient_dim != n:
            raise DimensionMismatch(
                "subspace and polytope live in different dimensions",
                {"subspace": subspace.ambient_dim, "polytope": n},
            )
        d = validate_subspace_dim(n, subspace.dim)
        base = subspace.coords(polytope.vertices[0])
        spread = [list(sub(subspace.coords(v), base)) for v in polytope.vertices[1:]]
        if not spread or rank(spread, self.backend) < d:
            raise DegenerateProjection("the projection is lower-dimensional", {"d": d})

        supplied = direction is not None
        generic = self._direction(polytope, subspace, direction)
        if verify_direction is None:
            verify_direction = not isinstance(direction, GenericDirection)
        if supplied and verify_direction and not self.cones.verify_direction(polytope, subspace, generic):
            raise NonGenericDirection("direction lies in a low-dimensional projected normal cone")

        complement = subspace.complement()
        measure = subspace.measure_scale()
        faces: list[ShadowFace] = []
        for face in polytope.faces(d):
            cone = self.cones.full_normal_cone(polytope, face)
            if not self.cones.projected_cone_contains(cone, complement, generic.u):
                continue
            faces.append(self._shadow_face(face, subspace, measure))

        if not faces:
            raise NonGenericDirection("no d-face selected by the direction")
        for item in faces:
            if item.witness_rank < d:
                raise NonGenericDirection(
                    "projection is not injective on a selected face",
                    {"face": list(item.face.vertex_ids), "rank": item.witness_rank},
                )
        logger.debug("shadow: d=%d selected %d of %d faces", d, len(faces), len(polytope.faces(d)))
        return ShadowDecomposition(polytope, subspace, generic, faces)

    def _shadow_face(self, face: Face, subspace: Subspace, measure: Measure) -> ShadowFace:
        hull = self.kernel.canonical_hull(face.points)
        chart = hull.chart
        witness = [[subspace.coords(f)[j] for f in chart.basis] for j in range(subspace.dim)]
        witness_det = det(witness, self.backend) if chart.dim == subspace.dim else self.backend.coerce(0)
        witness_rank = rank(witness, self.backend)
        weight = abs(witness_det) * self.kernel.moments(hull).weight
        return ShadowFace(
            face,
            hull,
            weight,
            self.kernel.volume(hull),
            scale_measure(weight, measure),
            witness,
            witness_det,
            witness_rank,
        )

    def full_family(self, polytope: Polytope, subspace: Subspace, direction: DirectionLike = None) -> list[Face]:
        """Every face F of any dimension with u ∈ P_{E⊥} N(K, F)."""
        generic = self._direction(polytope, subspace, direction)
        complement = subspace.complement()
        return [
            face
            for face in polytope.all_faces()
            if self.cones.projected_cone_contains(
                self.cones.full_normal_cone(polytope, face), complement, generic.u
            )
        ]

    def verify_tiling(self, decomposition: ShadowDecomposition, full_family: bool = False) -> TilingReport:
        """
        Disjointness of the projected relative interiors, the volume identity against the
        independently hulled projection, and injectivity ranks. Failures become entries.
        """
        subspace = decomposition.subspace
        projected = [
            self.kernel.canonical_hull([subspace.coords(v) for v in item.face.points])
            for item in decomposition.faces
        ]
        count = len(projected)
        pairs = list(combinations(range(count), 2))
        sampled = count > TILING_ALL_PAIRS_LIMIT
        if sampled and len(pairs) > TILING_SAMPLED_PAIRS:
            rng = self.context.rng(count)
            chosen = sorted(rng.choice(len(pairs), size=TILING_SAMPLED_PAIRS, replace=False).tolist())
            pairs = [pairs[i] for i in chosen]
        verdicts: list[PairVerdict] = [
            {"i": i, "j": j, "disjoint": self._interiors_disjoint(projected[i], projected[j])} for i, j in pairs
        ]

        face_sum = decomposition.projected_volume()
        oracle = self.kernel.volume(self.kernel.project(decomposition.polytope, subspace))
        residual = measure_difference(face_sum, oracle)
        relative = abs(float(residual)) / float(oracle) if float(oracle) else float("inf")
        ranks = [item.witness_rank for item in decomposition.faces]
        report: TilingReport = {
            "pairs": verdicts,
            "all_disjoint": all(v["disjoint"] for v in verdicts),
            "sampled": sampled,
            "face_volume_sum": face_sum,
            "oracle_volume": oracle,
            "residual": residual,
            "relative_residual": relative,
            "ranks": ranks,
            "injective": all(r == decomposition.d for r in ranks),
        }
        if full_family:
            dims = [face.dim for face in self.full_family(decomposition.polytope, subspace, decomposition.direction)]
            report["full_family_dims"] = dims
            report["full_family_ok"] = all(dim <= decomposition.d for dim in dims)
        return report

    def _interiors_disjoint(self, first: Polytope, second: Polytope) -> bool:
        """
        relint A ∩ relint B = ∅ for full-dimensional A, B ⊂ ℝ^d: the LP
        max s s.t. a·x + s ≤ h over both facet sets, s ≤ 1, has optimum s ≤ 0.

        Raises:
            InfeasibleProgram: If the solver finds no optimum.
        """
        backend = self.backend
        zero, one = backend.coerce(0), backend.coerce(1)
        facets = list(first.facets) + list(second.facets)
        d = first.ambient_dim
        rows_count = len(facets) + 1
        a_eq: list[list[Any]] = []
        b_eq: list[Any] = []
        for index, facet in enumerate(facets):
            slack = [zero] * rows_count
            slack[index] = one
            a_eq.append(list(facet.normal) + [-x for x in facet.normal] + [one, -one] + slack)
            b_eq.append(facet.offset)
        slack = [zero] * rows_count
        slack[-1] = one
        a_eq.append([zero] * (2 * d) + [one, -one] + slack)
        b_eq.append(one)
        objective = [zero] * (2 * d) + [one, -one] + [zero] * rows_count
        # feasible for s → −∞ and bounded by s ≤ 1
        result = lp.maximize(objective, a_eq, b_eq, backend).require_optimal()
        magnitude = max([abs(float(x)) for x in b_eq] + [1.0])
        return backend.sign(result.value, magnitude) <= 0

    def integrate_over_projection(
        self,
        polytope: Polytope,
        subspace: Subspace,
        f: QuadraticForm,
        direction: DirectionLike = None,
    ) -> Measure:
        """∫_{P_E K} f = Σ_F Vol_d(P_E F) · mean_F(f∘P_E), exact in exact mode."""
        decomposition = self.shadow_faces(polytope, subspace, direction)
        return self.integrate_decomposition(decomposition, f)

    def integrate_decomposition(self, decomposition: ShadowDecomposition, f: QuadraticForm) -> Measure:
        subspace = decomposition.subspace
        if f.ambient_dim != subspace.ambient_dim:
            raise DimensionMismatch("quadratic form and subspace live in different dimensions")
        pulled = f.compose(subspace.projection_matrix())
        total: Any = self.backend.coerce(0)
        for item in decomposition.faces:
            total = total + item.weight * self.kernel.mean_value(item.hull, pulled)
        return scale_measure(total, subspace.measure_scale())

    def projection_moment_bound(
        self, polytope: Polytope, subspace: Subspace, direction: DirectionLike = None
    ) -> MomentBound:
        """
        lhs = (1/Vol)∫_{P_E K}|x|² against rhs = max_F (1/Vol F)∫_F |y|².

        Raises:
            DegenerateProjection: If dim P_E P < d.
        """
        decomposition = self.shadow_faces(polytope, subspace, direction)
        return self._moment_bound(decomposition)

    def _moment_bound(self, decomposition: ShadowDecomposition) -> MomentBound:
        n = decomposition.polytope.ambient_dim
        squared = QuadraticForm.norm2(n, self.backend)
        pulled = squared.compose(decomposition.subspace.projection_matrix())
        numerator: Any = self.backend.coerce(0)
        denominator: Any = self.backend.coerce(0)
        for item in decomposition.faces:
            numerator = numerator + item.weight * self.kernel.mean_value(item.hull, pulled)
            denominator = denominator + item.weight
        lhs = numerator / denominator
        rhs = max((self.kernel.mean_value(item.hull, squared) for item in decomposition.faces), key=float)
        magnitude = max(abs(float(rhs)), 1.0)
        return {"lhs": lhs, "rhs": rhs, "holds": self.backend.sign(lhs - rhs, magnitude) <= 0}

    def projection_inertia(
        self, polytope: Polytope, subspace: Subspace, direction: DirectionLike = None
    ) -> InertiaReport:
        """InertiaReport of P_E K assembled from the face moments of the tiling."""
        decomposition = self.shadow_faces(polytope, subspace, direction)
        return self.decomposition_inertia(decomposition)

    def decomposition_inertia(self, decomposition: ShadowDecomposition) -> InertiaReport:
        subspace = decomposition.subspace
        n = subspace.ambient_dim
        projection = subspace.projection_matrix()
        zero = self.backend.coerce(0)
        weight: Any = zero
        first = tuple([zero] * n)
        second: Matrix = [[zero] * n for _ in range(n)]
        for item in decomposition.faces:
            moments = self.kernel.moments(item.hull)
            factor = abs(item.witness_det)
            weight = weight + item.weight
            first = add(first, scale(matvec(projection, moments.first), factor))
            second = mat_add(second, mat_scale(matmul(matmul(projection, moments.second), projection), factor))
        combined = Moments(weight, first, second, subspace.measure_scale())
        return self.isotropy.report_from_moments(subspace.dim, combined, subspace.chart)

    def projection_l_bound(
        self, polytope: Polytope, subspace: Subspace, direction: DirectionLike = None
    ) -> ProjectionLBound:
        """L²_{P_E K} ≤ (1/d)·Vol_d(P_E K)^{−2/d}·max_F (1/Vol F)∫_F |y|²."""
        decomposition = self.shadow_faces(polytope, subspace, direction)
        report = self.decomposition_inertia(decomposition)
        rhs = float(self._moment_bound(decomposition)["rhs"])
        d = subspace.dim
        bound = rhs / d * float(report.volume) ** (-2 / d)
        L_squared = report.L**2
        return {
            "L_squared": L_squared,
            "bound": bound,
            "holds": L_squared <= bound * (1 + self.context.tolerance),
        }
