from collections.abc import Iterator, Sequence
from concurrent.futures import Executor
from typing import Any, Optional

from polyshadow.geometry.context import (
    DEFAULT_BACKEND,
    DEFAULT_DIRECTION_RETRIES,
    DEFAULT_SEED,
    DEFAULT_WORKERS,
    Context,
    Seed,
)
from polyshadow.geometry.kernel.linalg import Vector
from polyshadow.geometry.kernel.scalar import DEFAULT_TOLERANCE, Measure, Scalar
from polyshadow.geometry.operations.cones import ConeOperations, FaceLike
from polyshadow.geometry.operations.isotropy import IsotropyOperations
from polyshadow.geometry.operations.kernel import KernelOperations
from polyshadow.geometry.operations.lab import LabOperations
from polyshadow.geometry.operations.shadow import DirectionLike, ShadowOperations
from polyshadow.geometry.operations.steiner import SteinerOperations
from polyshadow.geometry.types import (
    BernsteinTail,
    ConeIdentity,
    ExperimentSummary,
    InradiusEvent,
    MomentBound,
    ProjectionLBound,
    ProjectionSectionReport,
    Radii,
    RogersShephard,
    SteinerChecks,
    TilingReport,
    VolumeRadiusEstimate,
    WhiteningBound,
)
from polyshadow.models.cone import Cone, GenericDirection
from polyshadow.models.experiment import ExperimentConfig, ExperimentRecord
from polyshadow.models.inertia import Embedding, InertiaReport
from polyshadow.models.polytope import Face, Polytope
from polyshadow.models.quadratic import QuadraticForm
from polyshadow.models.shadow import ShadowDecomposition
from polyshadow.models.steiner import SteinerResult
from polyshadow.models.subspace import Subspace


class Toolkit(Context):
    """Main entry point that combines all operation groups."""

    def __init__(
        self,
        backend: str = DEFAULT_BACKEND,
        tolerance: float = DEFAULT_TOLERANCE,
        max_direction_retries: int = DEFAULT_DIRECTION_RETRIES,
        workers: int = DEFAULT_WORKERS,
        seed: int = DEFAULT_SEED,
        executor: Optional[Executor] = None,
    ) -> None:
        super().__init__(
            backend=backend,
            tolerance=tolerance,
            max_direction_retries=max_direction_retries,
            workers=workers,
            seed=seed,
            executor=executor,
        )
        self.kernel = KernelOperations(self)
        self.cones = ConeOperations(self, self.kernel)
        self.isotropy = IsotropyOperations(self, self.kernel)
        self.shadow = ShadowOperations(self, self.kernel, self.cones, self.isotropy)
        self.steiner = SteinerOperations(self, self.kernel, self.isotropy)
        self.lab = LabOperations(self, self.kernel, self.cones, self.shadow, self.isotropy)

    # polytope kernel

    def canonical_hull(self, points: Sequence[Sequence[Any]]) -> Polytope:
        return self.kernel.canonical_hull(points)

    def face_lattice(self, polytope: Polytope) -> dict[int, list[Face]]:
        return self.kernel.face_lattice(polytope)

    def f_vector(self, polytope: Polytope) -> tuple[int, ...]:
        return self.kernel.f_vector(polytope)

    def triangulate(self, polytope: Polytope) -> list[tuple[int, ...]]:
        return self.kernel.triangulate(polytope)

    def simplex_volume(self, vertices: Sequence[Sequence[Any]]) -> Measure:
        return self.kernel.simplex_volume(vertices)

    def volume(self, polytope: Polytope) -> Measure:
        return self.kernel.volume(polytope)

    def simplex_second_moment(self, vertices: Sequence[Sequence[Any]]) -> tuple[Vector, list[list[Scalar]]]:
        return self.kernel.simplex_second_moment(vertices)

    def integrate_quadratic(self, polytope: Polytope, f: QuadraticForm) -> Measure:
        return self.kernel.integrate_quadratic(polytope, f)

    def contains_point(self, polytope: Polytope, x: Sequence[Any]) -> bool:
        return self.kernel.contains_point(polytope, x)

    def project(self, polytope: Polytope, subspace: Subspace) -> Polytope:
        return self.kernel.project(polytope, subspace)

    def apply_affine(
        self, polytope: Polytope, matrix: Sequence[Sequence[Any]], translation: Optional[Sequence[Any]] = None
    ) -> Polytope:
        return self.kernel.apply_affine(polytope, matrix, translation)

    def cube(self, d: int, lo: Any = 0, hi: Any = 1) -> Polytope:
        return self.kernel.cube(d, lo, hi)

    def cross_polytope(self, n: int) -> Polytope:
        return self.kernel.cross_polytope(n)

    def standard_simplex(self, n: int) -> Polytope:
        return self.kernel.standard_simplex(n)

    def regular_simplex(self, d: int) -> Polytope:
        return self.kernel.regular_simplex(d)

    # cones

    def normal_cone(
        self, polytope: Polytope, face: FaceLike, within: Optional[Subspace] = None, full: bool = False
    ) -> Cone:
        return self.cones.normal_cone(polytope, face, within=within, full=full)

    def support_cone(self, polytope: Polytope, x: Sequence[Any]) -> Cone:
        return self.cones.support_cone(polytope, x)

    def cone_polar(self, cone: Cone, within: Optional[Subspace] = None) -> Cone:
        return self.cones.cone_polar(cone, within)

    def projected_cone_contains(self, cone: Cone, subspace: Subspace, u: Sequence[Any]) -> bool:
        return self.cones.projected_cone_contains(cone, subspace, u)

    def section(self, polytope: Polytope, origin: Sequence[Any], directions: Subspace) -> Polytope:
        return self.cones.section(polytope, origin, directions)

    def section_cone_identity(self, polytope: Polytope, directions: Subspace, vertex: int) -> ConeIdentity:
        return self.cones.section_cone_identity(polytope, directions, vertex)

    def generic_direction(self, polytope: Polytope, subspace: Subspace, seed: Seed = None) -> GenericDirection:
        return self.cones.generic_direction(polytope, subspace, seed)

    # shadow

    def shadow_faces(
        self,
        polytope: Polytope,
        subspace: Subspace,
        direction: DirectionLike = None,
        verify_direction: Optional[bool] = None,
    ) -> ShadowDecomposition:
        return self.shadow.shadow_faces(polytope, subspace, direction, verify_direction)

    def verify_tiling(self, decomposition: ShadowDecomposition, full_family: bool = False) -> TilingReport:
        return self.shadow.verify_tiling(decomposition, full_family=full_family)

    def integrate_over_projection(
        self, polytope: Polytope, subspace: Subspace, f: QuadraticForm, direction: DirectionLike = None
    ) -> Measure:
        return self.shadow.integrate_over_projection(polytope, subspace, f, direction)

    def projection_moment_bound(
        self, polytope: Polytope, subspace: Subspace, direction: DirectionLike = None
    ) -> MomentBound:
        return self.shadow.projection_moment_bound(polytope, subspace, direction)

    def projection_inertia(
        self, polytope: Polytope, subspace: Subspace, direction: DirectionLike = None
    ) -> InertiaReport:
        return self.shadow.projection_inertia(polytope, subspace, direction)

    def projection_l_bound(
        self, polytope: Polytope, subspace: Subspace, direction: DirectionLike = None
    ) -> ProjectionLBound:
        return self.shadow.projection_l_bound(polytope, subspace, direction)

    # isotropy

    def inertia(self, polytope: Polytope) -> InertiaReport:
        return self.isotropy.inertia(polytope)

    def isotropy_constant(self, polytope: Polytope) -> float:
        return self.isotropy.isotropy_constant(polytope)

    def isotropic_position(self, polytope: Polytope) -> Polytope:
        return self.isotropy.isotropic_position(polytope)

    def radii(self, polytope: Polytope, about_barycenter: bool = False) -> Radii:
        return self.isotropy.radii(polytope, about_barycenter)

    def embed_as_b1_projection(
        self, body: Polytope, vectors: Optional[Sequence[Sequence[Any]]] = None
    ) -> Embedding:
        return self.isotropy.embed_as_b1_projection(body, vectors)

    def embed_as_simplex_projection(
        self, body: Polytope, vectors: Optional[Sequence[Sequence[Any]]] = None
    ) -> Embedding:
        return self.isotropy.embed_as_simplex_projection(body, vectors)

    def minkowski_difference_body(self, polytope: Polytope) -> Polytope:
        return self.isotropy.minkowski_difference_body(polytope)

    def rogers_shephard(self, polytope: Polytope) -> RogersShephard:
        return self.isotropy.rogers_shephard(polytope)

    def deterministic_bound_check(self, polytope: Polytope) -> float:
        return self.isotropy.deterministic_bound_check(polytope)

    def whitening_bound(self, polytope: Polytope) -> WhiteningBound:
        return self.isotropy.whitening_bound(polytope)

    def volume_radius_estimate(
        self, subspace: Subspace, samples: int = 64, seed: Seed = None
    ) -> VolumeRadiusEstimate:
        return self.isotropy.volume_radius_estimate(subspace, samples, seed)

    # steiner

    def hyperplane_section(self, polytope: Polytope, normal: Sequence[Any], offset: Any = 0) -> Polytope:
        return self.steiner.hyperplane_section(polytope, normal, offset)

    def steiner_symmetrize(self, polytope: Polytope, nu: Sequence[Any]) -> SteinerResult:
        return self.steiner.steiner_symmetrize(polytope, nu)

    def steiner_inertia_checks(self, result: SteinerResult, directions: int = 8, seed: Seed = None) -> SteinerChecks:
        return self.steiner.steiner_inertia_checks(result, directions, seed)

    def hensley_ratio(self, polytope: Polytope, theta: Sequence[Any]) -> float:
        return self.steiner.hensley_ratio(polytope, theta)

    def projection_section_comparison(
        self, polytope: Polytope, nu: Sequence[Any], with_radii: bool = True
    ) -> ProjectionSectionReport:
        return self.steiner.projection_section_comparison(polytope, nu, with_radii)

    # random lab

    def random_subspace(self, n: int, d: int, seed: Seed = None) -> Subspace:
        return self.lab.random_subspace(n, d, seed)

    def random_subspace_in_H(self, n: int, d: int, seed: Seed = None) -> Subspace:
        return self.lab.random_subspace_in_H(n, d, seed)

    def random_sphere_polytope(self, n: int, m: int, symmetric: bool = True, seed: Seed = None) -> Polytope:
        return self.lab.random_sphere_polytope(n, m, symmetric, seed)

    def bernstein_face_sums(self, body: Polytope, d: int) -> list[Any]:
        return self.lab.bernstein_face_sums(body, d)

    def run_projection_experiment(
        self, config: ExperimentConfig
    ) -> tuple[list[ExperimentRecord], ExperimentSummary]:
        return self.lab.run_projection_experiment(config)

    def iter_trials(self, config: ExperimentConfig) -> Iterator[ExperimentRecord]:
        return self.lab.iter_trials(config)

    def inradius_event_frequency(
        self, n: int, m: int, trials: int, symmetric: bool = True, seed: Seed = None
    ) -> InradiusEvent:
        return self.lab.inradius_event_frequency(n, m, trials, symmetric, seed)

    def bernstein_tail(
        self,
        n: int,
        m: int,
        d: int,
        bodies: int,
        epsilons: Sequence[float],
        symmetric: bool = True,
        seed: Seed = None,
    ) -> BernsteinTail:
        return self.lab.bernstein_tail(n, m, d, bodies, epsilons, symmetric, seed)
