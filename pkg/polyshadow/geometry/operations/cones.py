import logging
from collections.abc import Iterable, Sequence
from fractions import Fraction
from itertools import combinations
from typing import Any, Optional, Union

import numpy as np

from polyshadow.geometry.context import Context, Seed
from polyshadow.geometry.exceptions import (
    DimensionMismatch,
    PointNotInPolytope,
    PolyshadowValidationError,
    RetriesExhausted,
)
from polyshadow.geometry.kernel import hull as hull_kernel
from polyshadow.geometry.kernel import lp
from polyshadow.geometry.kernel.linalg import (
    Vector,
    dot,
    gram_schmidt,
    nullspace,
    rank,
    scale,
    sub,
)
from polyshadow.geometry.operations.kernel import KernelOperations
from polyshadow.geometry.types import ConeIdentity
from polyshadow.geometry.utils import validate_dimensions, validate_subspace_dim
from polyshadow.models.cone import Cone, GenericDirection
from polyshadow.models.polytope import Face, Polytope
from polyshadow.models.subspace import Subspace

logger = logging.getLogger(__name__)

FaceLike = Union[Face, Iterable[int]]

RATIONAL_DENOMINATOR = 2**20


class ConeOperations:
    """Normal and support cones, polars, projected cones and generic directions."""

    def __init__(self, context: Context, kernel: KernelOperations) -> None:
        self.context = context
        self.kernel = kernel

    @property
    def backend(self) -> Any:
        return self.context.backend

    def _face(self, polytope: Polytope, face: FaceLike) -> Face:
        if isinstance(face, Face):
            if face.parent is not polytope:
                return polytope.face(face.vertex_ids)
            return face
        return polytope.face(face)

    def _affine_complement(self, polytope: Polytope, within: Optional[Subspace]) -> list[Vector]:
        """Basis of the directions of ``within`` (or ℝⁿ) orthogonal to aff P."""
        directions = list(polytope.chart.basis)
        n = polytope.ambient_dim
        if within is None:
            key = "affine_complement"
            if key not in polytope._cache:
                rows = [list(b) for b in directions]
                polytope._cache[key] = gram_schmidt(nullspace(rows, n, self.backend), self.backend)
            return polytope._cache[key]
        rows = [[dot(a, g) for g in within.basis] for a in directions]
        coefficients = nullspace(rows, within.dim, self.backend)
        return gram_schmidt([within.lift(c) for c in coefficients], self.backend)

    def normal_cone(
        self,
        polytope: Polytope,
        face: FaceLike,
        within: Optional[Subspace] = None,
        full: bool = False,
    ) -> Cone:
        """
        N(P, F) generated by the outer normals of the facets containing F.

        For a lower-dimensional P the default is the cone relative to aff P. ``full``
        gives the cone in ℝⁿ, ``within`` the cone relative to an affine subspace whose
        direction space ``within`` contains aff P.

        Raises:
            FaceNotInPolytope: If ``face`` is not a face of ``polytope``.
        """
        face = self._face(polytope, face)
        generators = [facet.normal for facet in polytope.facets_containing(face)]
        if within is not None:
            for b in polytope.chart.basis:
                if not within.contains(b):
                    raise PolyshadowValidationError(
                        "the affine hull of the polytope is not parallel to the given subspace"
                    )
            extra = self._affine_complement(polytope, within)
        elif full and not polytope.is_full_dimensional:
            extra = self._affine_complement(polytope, None)
        else:
            extra = []
        for v in extra:
            generators.extend([v, tuple(-x for x in v)])
        return Cone(polytope.ambient_dim, generators, self.backend)

    def relative_normal_cone(self, polytope: Polytope, face: FaceLike) -> Cone:
        """N_G(P, F) with G = aff P."""
        return self.normal_cone(polytope, face)

    def normal_cone_at(
        self, polytope: Polytope, x: Sequence[Any], within: Optional[Subspace] = None, full: bool = False
    ) -> Cone:
        """N(P, x) for a point x ∈ P, through the face whose relative interior holds x."""
        return self.normal_cone(polytope, self.kernel.minimal_face(polytope, x), within, full)

    def support_cone(self, polytope: Polytope, x: Sequence[Any]) -> Cone:
        """
        S(P, x) generated by {v − x : v vertex of P}.

        Raises:
            PointNotInPolytope: If x ∉ P.
        """
        point = self.backend.vector(x)
        validate_dimensions(polytope.ambient_dim, point)
        if not self.kernel.contains_point(polytope, point):
            raise PointNotInPolytope("support cones need a point of the polytope")
        return Cone(polytope.ambient_dim, [sub(v, point) for v in polytope.vertices], self.backend)

    def cone_contains(self, cone: Cone, w: Sequence[Any]) -> bool:
        target = self.backend.vector(w)
        validate_dimensions(cone.ambient_dim, target)
        return lp.conic_combination(cone.generators, target, self.backend)

    def cones_equal(self, first: Cone, second: Cone) -> bool:
        """Mutual containment of generators."""
        return all(self.cone_contains(second, g) for g in first.generators) and all(
            self.cone_contains(first, g) for g in second.generators
        )

    def cone_dim(self, cone: Cone) -> int:
        if not cone.generators:
            return 0
        return rank([list(g) for g in cone.generators], self.backend)

    def cone_polar(self, cone: Cone, within: Optional[Subspace] = None) -> Cone:
        """
        C* = {y ∈ W : ⟨g, y⟩ ≤ 0 for all generators g}, returned by generators.

        W is ``within`` (the relative polar) or all of ℝⁿ.
        """
        n = cone.ambient_dim
        space = within if within is not None else Subspace.coordinate(n, range(n), self.backend)
        if space.ambient_dim != n:
            raise DimensionMismatch("subspace and cone live in different dimensions")
        rows = [[dot(g, b) for b in space.basis] for g in cone.generators]
        p = space.dim
        lineality = nullspace(rows, p, self.backend)
        r = p - len(lineality)
        rays: list[Vector] = []
        if r > 0:
            magnitude = max((abs(float(x)) for row in rows for x in row), default=1.0)
            lineality_rows = [list(v) for v in lineality]
            for subset in combinations(range(len(rows)), r - 1):
                system = [rows[i] for i in subset] + lineality_rows
                kernel = nullspace(system, p, self.backend)
                if len(kernel) != 1:
                    continue
                c = kernel[0]
                values = [dot(row, c) for row in rows]
                if all(self.backend.sign(v, magnitude) <= 0 for v in values):
                    rays.append(c)
                elif all(self.backend.sign(v, magnitude) >= 0 for v in values):
                    rays.append(tuple(-x for x in c))
        generators = [space.lift(c) for c in _unique_rays(rays, self.backend)]
        for c in lineality:
            v = space.lift(c)
            generators.extend([v, tuple(-x for x in v)])
        return Cone(n, generators, self.backend)

    def cone_intersection(self, first: Cone, second: Cone, within: Optional[Subspace] = None) -> Cone:
        """C₁ ∩ C₂ = (C₁* + C₂*)*, taken inside ``within``."""
        polars = self.cone_polar(first, within).generators + self.cone_polar(second, within).generators
        return self.cone_polar(Cone(first.ambient_dim, polars, self.backend), within)

    def projected_cone_contains(self, cone: Cone, subspace: Subspace, u: Sequence[Any]) -> bool:
        """u ∈ P_W C, decided by LP on the projected generators."""
        target = self.backend.vector(u)
        validate_dimensions(cone.ambient_dim, target)
        if not subspace.contains(target):
            return False
        coords = [subspace.coords(g) for g in cone.generators]
        return lp.conic_combination(coords, subspace.coords(target), self.backend)

    def projected_cone_dim(self, cone: Cone, subspace: Subspace) -> int:
        """dim span P_W C."""
        if not cone.generators:
            return 0
        return rank([list(subspace.coords(g)) for g in cone.generators], self.backend)

    def project_cone(self, cone: Cone, subspace: Subspace) -> Cone:
        return Cone(cone.ambient_dim, [subspace.project(g) for g in cone.generators], self.backend)

    def section(self, polytope: Polytope, origin: Sequence[Any], directions: Subspace) -> Polytope:
        """
        P ∩ (origin + G₀), with vertices found from the facet inequalities restricted to
        the section's coordinates.
        """
        x = self.backend.vector(origin)
        normals_out = self._affine_complement(polytope, None)
        rows = [[dot(w, g) for g in directions.basis] for w in normals_out]
        free = nullspace(rows, directions.dim, self.backend)
        shift = [dot(w, sub(x, polytope.vertices[0])) for w in normals_out]
        magnitude = max([abs(float(s)) for s in shift] + [1.0])
        if any(not self.backend.is_zero(s, magnitude) for s in shift):
            raise PointNotInPolytope("section origin is not on the affine hull of the polytope")
        if not free:
            if not self.kernel.contains_point(polytope, x):
                raise PointNotInPolytope("section origin is not in the polytope")
            return self.kernel.canonical_hull([x])
        lifted = [directions.lift(c) for c in free]
        normals = [[dot(f.normal, v) for v in lifted] for f in polytope.facets]
        offsets = [f.offset - dot(f.normal, x) for f in polytope.facets]
        points = hull_kernel.halfspace_vertices(normals, offsets, self.backend)
        if not points:
            raise PointNotInPolytope("section origin is not in the polytope")
        images = []
        for t in points:
            y = x
            for coefficient, v in zip(t, lifted):
                y = tuple(a + coefficient * b for a, b in zip(y, v))
            images.append(y)
        return self.kernel.canonical_hull(images)

    def section_cone_identity(
        self, polytope: Polytope, directions: Subspace, vertex: int
    ) -> ConeIdentity:
        """
        Compare P_{G₀} N(L, x) with N_G(L ∩ G, x) for G = x + G₀ through the vertex x.
        """
        x = polytope.vertices[vertex]
        lhs = self.project_cone(self.normal_cone(polytope, [vertex], full=True), directions)
        section = self.section(polytope, x, directions)
        index = next(i for i, v in enumerate(section.vertices) if _same(v, x, self.backend))
        rhs = self.normal_cone(section, [index], within=directions)
        return {"lhs": lhs, "rhs": rhs, "holds": self.cones_equal(lhs, rhs)}

    def full_normal_cone(self, polytope: Polytope, face: FaceLike) -> Cone:
        """N(P, F) in ℝⁿ, memoised on the polytope."""
        face = self._face(polytope, face)
        cones: dict[tuple[int, ...], Cone] = polytope._cache.setdefault("full_normal_cones", {})
        if face.vertex_ids not in cones:
            cones[face.vertex_ids] = self.normal_cone(polytope, face, full=True)
        return cones[face.vertex_ids]

    def _low_dimensional_cones(
        self, polytope: Polytope, d: int, complement: Subspace
    ) -> list[tuple[tuple[int, ...], int, list[Vector]]]:
        """
        Faces whose projected normal cone has dimension ≤ n − d − 1, with the projected
        generators. Faces above dimension d + 1 are skipped: their normal cones lie inside
        the cone of any (d + 1)-subface.
        """
        n = polytope.ambient_dim
        top = min(d + 1, polytope.dim)
        excluded = []
        for face in (face for j in range(top + 1) for face in polytope.faces(j)):
            coords = [complement.coords(g) for g in self.full_normal_cone(polytope, face).generators]
            dim = rank([list(c) for c in coords], self.backend) if coords else 0
            if dim <= n - d - 1:
                excluded.append((face.vertex_ids, dim, coords))
        return excluded

    def _in_cone(self, coords: Sequence[Vector], dim: int, target: Vector) -> bool:
        # span test first; the LP only runs when target lies in the span
        if rank([list(c) for c in coords] + [list(target)], self.backend) > dim:
            return False
        return lp.conic_combination(coords, target, self.backend)

    def generic_direction(self, polytope: Polytope, subspace: Subspace, seed: Seed = None) -> GenericDirection:
        """
        Sample u ∈ E⊥ avoiding every projected normal cone of dimension ≤ n − d − 1.

        Raises:
            RetriesExhausted: If no sampled direction passes within the retry budget.
        """
        n = polytope.ambient_dim
        if subspace.ambient_dim != n:
            raise DimensionMismatch(
                "subspace and polytope live in different dimensions",
                {"subspace": subspace.ambient_dim, "polytope": n},
            )
        d = validate_subspace_dim(n, subspace.dim)
        complement = subspace.complement()
        rng = self.context.generator(seed)
        excluded = self._low_dimensional_cones(polytope, d, complement)

        for attempt in range(1, self.context.max_direction_retries + 1):
            u = self._sample_direction(complement, rng)
            target = complement.coords(u)
            if not any(self._in_cone(coords, dim, target) for _, dim, coords in excluded):
                logger.debug("generic direction accepted after %d attempt(s)", attempt)
                return GenericDirection(u, [(ids, dim) for ids, dim, _ in excluded], attempt)
            logger.debug("direction rejected on attempt %d", attempt)
        raise RetriesExhausted(
            "no generic direction found; retry in exact mode",
            {"attempts": self.context.max_direction_retries, "excluded_cones": len(excluded)},
        )

    def verify_direction(self, polytope: Polytope, subspace: Subspace, direction: GenericDirection) -> bool:
        """Re-check that u ∈ E⊥ and avoids every low-dimensional projected normal cone."""
        if not subspace.is_orthogonal_to(direction.u) or all(self.backend.is_zero(x) for x in direction.u):
            return False
        complement = subspace.complement()
        target = complement.coords(direction.u)
        excluded = self._low_dimensional_cones(polytope, subspace.dim, complement)
        return not any(self._in_cone(coords, dim, target) for _, dim, coords in excluded)

    def _sample_direction(self, complement: Subspace, rng: np.random.Generator) -> Vector:
        while True:
            gaussian = rng.standard_normal(complement.dim)
            if np.any(gaussian != 0):
                break
        if self.backend.exact:
            coefficients = [Fraction(float(g)).limit_denominator(RATIONAL_DENOMINATOR) for g in gaussian]
            if all(c == 0 for c in coefficients):
                coefficients[0] = Fraction(1)
        else:
            coefficients = list(gaussian / np.linalg.norm(gaussian))
        return complement.lift([self.backend.coerce(c) for c in coefficients])


def _same(a: Sequence[Any], b: Sequence[Any], backend: Any) -> bool:
    magnitude = max([abs(float(x)) for x in a] + [1.0])
    return all(backend.is_zero(x - y, magnitude) for x, y in zip(a, b))


def _unique_rays(rays: Sequence[Vector], backend: Any) -> list[Vector]:
    unique: list[Vector] = []
    for ray in rays:
        largest = max(abs(x) for x in ray)
        normalised = scale(ray, 1 / largest)
        if not any(_same(normalised, other, backend) for other in unique):
            unique.append(normalised)
    return unique
