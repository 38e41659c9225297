import logging
import math
from collections.abc import Sequence
from typing import Any

import numpy as np

from polyshadow.geometry.constants import (
    HENSLEY_INTERVAL,
    ISOTROPY_CHECK_FACTOR,
    PROJECTION_SECTION_INTERVAL,
    STEINER_MAX_DIM,
)
from polyshadow.geometry.context import Context, Seed
from polyshadow.geometry.exceptions import (
    DegenerateBody,
    DimensionMismatch,
    DimensionUnsupported,
    EmptySection,
    NotIsotropicInput,
    PolyshadowValidationError,
    PreconditionViolated,
)
from polyshadow.geometry.kernel import hull as hull_kernel
from polyshadow.geometry.kernel.linalg import Vector, add, dot, norm2, scale, sub
from polyshadow.geometry.kernel.scalar import scale_measure
from polyshadow.geometry.operations.isotropy import IsotropyOperations
from polyshadow.geometry.operations.kernel import KernelOperations
from polyshadow.geometry.types import ProjectionSectionReport, SteinerChecks
from polyshadow.models.polytope import Polytope
from polyshadow.models.quadratic import QuadraticForm
from polyshadow.models.steiner import SteinerResult
from polyshadow.models.subspace import Subspace

logger = logging.getLogger(__name__)


class SteinerOperations:
    """Hyperplane sections and Steiner symmetrization of polytopes in dimension ≤ 4."""

    def __init__(self, context: Context, kernel: KernelOperations, isotropy: IsotropyOperations) -> None:
        self.context = context
        self.kernel = kernel
        self.isotropy = isotropy

    @property
    def backend(self) -> Any:
        return self.context.backend

    def _direction(self, polytope: Polytope, nu: Sequence[Any]) -> Vector:
        direction = self.backend.vector(nu)
        if len(direction) != polytope.ambient_dim:
            raise DimensionMismatch(
                "direction and polytope live in different dimensions",
                {"direction": len(direction), "polytope": polytope.ambient_dim},
            )
        if all(self.backend.is_zero(x) for x in direction):
            raise PolyshadowValidationError("direction must be non-zero")
        return direction

    def hyperplane_section(self, polytope: Polytope, normal: Sequence[Any], offset: Any = 0) -> Polytope:
        """
        P ∩ {x : ⟨a, x⟩ = c}, hulled from the vertices on the hyperplane and the edge crossings.

        Raises:
            EmptySection: If the hyperplane misses P.
        """
        a = self._direction(polytope, normal)
        c = self.backend.coerce(offset)
        magnitude = max([abs(float(x)) for v in polytope.vertices for x in v] + [abs(float(c)), 1.0])
        values = [dot(a, v) - c for v in polytope.vertices]
        signs = [self.backend.sign(value, magnitude) for value in values]
        points = [v for v, s in zip(polytope.vertices, signs) if s == 0]
        for edge in polytope.faces(1):
            i, j = edge.vertex_ids
            if signs[i] * signs[j] < 0:
                p, q = polytope.vertices[i], polytope.vertices[j]
                t = values[i] / (values[i] - values[j])
                points.append(add(p, scale(sub(q, p), t)))
        if not points:
            raise EmptySection("the hyperplane does not meet the polytope", {"offset": str(c)})
        return self.kernel.canonical_hull(points)

    def _chord(self, polytope: Polytope, base: Vector, nu: Vector) -> tuple[Any, Any]:
        """Parameter range [t_min, t_max] of the line base + tν inside P."""
        upper: list[Any] = []
        lower: list[Any] = []
        for facet in polytope.facets:
            slope = dot(facet.normal, nu)
            if self.backend.is_zero(slope, math.sqrt(float(norm2(facet.normal)) * float(norm2(nu)))):
                continue
            bound = (facet.offset - dot(facet.normal, base)) / slope
            (upper if slope > 0 else lower).append(bound)
        return max(lower), min(upper)

    def steiner_symmetrize(self, polytope: Polytope, nu: Sequence[Any]) -> SteinerResult:
        """
        S(K): every chord of K parallel to ν replaced by the centred chord of equal length.

        The chord length is affine on each cell of the overlay of the projected upper and
        lower boundary facets, so S(K) is the hull of the centred chords over the cell vertices.

        Raises:
            DimensionUnsupported: If the ambient dimension is outside 2..4.
            DegenerateBody: If P is not full-dimensional.
        """
        n = polytope.ambient_dim
        if not 2 <= n <= STEINER_MAX_DIM:
            raise DimensionUnsupported(
                "Steiner symmetrization is implemented for ambient dimension 2 to 4", {"n": n}
            )
        if not polytope.is_full_dimensional:
            raise DegenerateBody("Steiner symmetrization needs a full-dimensional body", {"dim": polytope.dim})
        direction = self._direction(polytope, nu)
        hyperplane = Subspace.span([direction], self.backend).complement()

        upper, lower = [], []
        magnitude = math.sqrt(float(norm2(direction)))
        for facet in polytope.facets:
            slope = dot(facet.normal, direction)
            scale_hint = magnitude * math.sqrt(float(norm2(facet.normal)))
            sign = self.backend.sign(slope, scale_hint)
            if sign > 0:
                upper.append(facet)
            elif sign < 0:
                lower.append(facet)
        shadows_up = [self._projected_facet(polytope, f.vertex_ids, hyperplane) for f in upper]
        shadows_down = [self._projected_facet(polytope, f.vertex_ids, hyperplane) for f in lower]

        candidates: list[Vector] = [hyperplane.coords(v) for v in polytope.vertices]
        for top in shadows_up:
            for bottom in shadows_down:
                normals = [f.normal for f in top.facets] + [f.normal for f in bottom.facets]
                offsets = [f.offset for f in top.facets] + [f.offset for f in bottom.facets]
                candidates.extend(hull_kernel.halfspace_vertices(normals, offsets, self.backend))
        cell_vertices = hull_kernel.dedupe(candidates, self.backend)
        logger.debug("steiner: %d overlay vertices from %dx%d facets", len(cell_vertices), len(upper), len(lower))

        points: list[Vector] = []
        for y in cell_vertices:
            base = hyperplane.lift(y)
            t_min, t_max = self._chord(polytope, base, direction)
            half = (t_max - t_min) / 2
            points.append(add(base, scale(direction, half)))
            points.append(sub(base, scale(direction, half)))
        output = self.kernel.canonical_hull(points)

        report_in = self.isotropy.inertia(polytope)
        report_out = self.isotropy.inertia(output)
        sigma_squared = report_out.det_chart / report_in.det_chart
        return SteinerResult(
            polytope,
            direction,
            output,
            sigma_squared,
            math.sqrt(float(sigma_squared)),
            report_in.L,
            report_out.L,
            report_in.volume,
            report_out.volume,
        )

    def _projected_facet(self, polytope: Polytope, ids: Sequence[int], hyperplane: Subspace) -> Polytope:
        return self.kernel.canonical_hull([hyperplane.coords(polytope.vertices[i]) for i in ids])

    def steiner_inertia_checks(
        self, result: SteinerResult, directions: int = 8, seed: Seed = None
    ) -> SteinerChecks:
        """
        Inertia identities of S(K) for an isotropic K: moments along θ ⊥ ν equal L², mixed
        moments vanish, σ² ≤ 1 and L_out = σ^{1/n} L_in. Also checks that S(K) is symmetric
        under the reflection in H = ν⊥ and that P_H S(K) = S(K) ∩ H.

        Raises:
            NotIsotropicInput: If K is not in isotropic position within 10τ.
        """
        backend = self.backend
        tolerance = ISOTROPY_CHECK_FACTOR * self.context.tolerance
        report = self.isotropy.inertia(result.input)
        L2 = report.L**2
        covariance = np.array(report.chart_covariance)
        if (
            abs(float(report.volume) - 1) > tolerance
            or max(abs(float(x)) for x in report.barycenter) > tolerance
            or np.max(np.abs(covariance - L2 * np.eye(len(covariance)))) > tolerance * L2
        ):
            raise NotIsotropicInput("input is not in isotropic position", {"L": report.L})

        n = result.n
        nu = result.direction
        hyperplane = Subspace.span([nu], backend).complement()
        rng = self.context.generator(seed)
        orthogonal, mixed = [], []
        for _ in range(directions):
            coefficients = rng.standard_normal(hyperplane.dim)
            theta = hyperplane.lift(backend.vector(coefficients / np.linalg.norm(coefficients)))
            size = float(norm2(theta))
            along = QuadraticForm.along(theta, backend)
            orthogonal.append(float(self.kernel.integrate_quadratic(result.output, along)))
            mixed_form = QuadraticForm.mixed(theta, nu, backend)
            raw = float(self.kernel.integrate_quadratic(result.output, mixed_form))
            mixed.append(raw / math.sqrt(size * float(norm2(nu))))
        orthogonal_residual = max((abs(m - L2) for m in orthogonal), default=0.0)
        mixed_residual = max((abs(m) for m in mixed), default=0.0)

        along_nu = self.kernel.integrate_quadratic(result.output, QuadraticForm.along(nu, backend))
        sigma_squared_moment = float(along_nu) / L2
        sigma_ok = float(result.sigma_squared) <= 1 + tolerance and (
            abs(float(result.sigma_squared) - sigma_squared_moment) <= tolerance * max(1.0, sigma_squared_moment)
        )
        identity_residual = result.identity_residual
        identity_ok = identity_residual <= tolerance * result.L_in
        monotone = result.L_out <= result.L_in * (1 + self.context.tolerance)

        section = self.hyperplane_section(result.output, nu, 0)
        shadow = self.kernel.project(result.output, hyperplane)
        section_volume, shadow_volume = self.kernel.volume(section), self.kernel.volume(shadow)
        section_ratio = float(section_volume) / float(shadow_volume)
        projection_equals_section = (
            backend.equal(section_volume, shadow_volume)
            and all(self.kernel.contains_point(section, v) for v in shadow.vertices)
            and all(self.kernel.contains_point(shadow, v) for v in section.vertices)
        )
        reflection_symmetric = self._reflection_symmetric(result.output, nu)
        checks: SteinerChecks = {
            "orthogonal_moments": orthogonal,
            "orthogonal_residual": orthogonal_residual,
            "mixed_moments": mixed,
            "mixed_residual": mixed_residual,
            "sigma_squared": result.sigma_squared,
            "sigma_squared_moment": sigma_squared_moment,
            "sigma_ok": sigma_ok,
            "identity_residual": identity_residual,
            "identity_ok": identity_ok,
            "monotone": monotone,
            "lower_sandwich_gap": 1 - result.L_out / result.L_in,
            "sandwich_constant": (1 / (n * (n + 1))) ** (1 / n),
            "section_volume_ratio": section_ratio,
            "projection_equals_section": projection_equals_section,
            "reflection_symmetric": reflection_symmetric,
            "passed": False,
        }
        checks["passed"] = (
            orthogonal_residual <= tolerance * max(1.0, L2)
            and mixed_residual <= tolerance * max(1.0, L2)
            and sigma_ok
            and identity_ok
            and monotone
            and projection_equals_section
            and reflection_symmetric
        )
        return checks

    def _reflection_symmetric(self, polytope: Polytope, nu: Vector) -> bool:
        """Whether P is mapped into itself by the reflection in ν⊥."""
        size = norm2(nu)
        return all(
            self.kernel.contains_point(polytope, sub(v, scale(nu, 2 * dot(v, nu) / size)))
            for v in polytope.vertices
        )

    def hensley_ratio(self, polytope: Polytope, theta: Sequence[Any]) -> float:
        """
        ρ = Vol_{n−1}(P ∩ θ⊥)·(∫_P ⟨x, θ⟩² dx)^{1/2} for a centred body of volume 1.

        Raises:
            PreconditionViolated: If the volume is not 1 or the barycenter is not 0.
        """
        direction = self._direction(polytope, theta)
        tolerance = ISOTROPY_CHECK_FACTOR * self.context.tolerance
        moments = self.kernel.moments(polytope)
        volume = float(self.kernel.volume(polytope))
        if abs(volume - 1) > tolerance or max(abs(float(x)) for x in moments.barycenter) > tolerance:
            raise PreconditionViolated(
                "the body must have volume 1 and barycenter 0", {"volume": volume}
            )
        section = self.hyperplane_section(polytope, direction, 0)
        second = float(self.kernel.integrate_quadratic(polytope, QuadraticForm.along(direction, self.backend)))
        return float(self.kernel.volume(section)) * math.sqrt(second)

    def hensley_in_interval(self, ratio: float) -> bool:
        low, high = HENSLEY_INTERVAL
        return low * (1 - self.context.tolerance) <= ratio <= high * (1 + self.context.tolerance)

    def projection_section_comparison(
        self, polytope: Polytope, nu: Sequence[Any], with_radii: bool = True
    ) -> ProjectionSectionReport:
        """
        L of P_H K and of K ∩ H against L_K for H = ν⊥, with the chord and width
        inequalities that relate the two.

        Raises:
            EmptySection: If H misses K.
        """
        backend = self.backend
        direction = self._direction(polytope, nu)
        n = polytope.ambient_dim
        hyperplane = Subspace.span([direction], backend).complement()
        line = Subspace.span([direction], backend)

        projection = self.kernel.project(polytope, hyperplane)
        section = self.hyperplane_section(polytope, direction, 0)
        L_projection = self.isotropy.isotropy_constant(projection)
        L_section = self.isotropy.isotropy_constant(section)
        L_body = self.isotropy.isotropy_constant(polytope)
        ratio = L_projection / L_body

        length = line.measure_scale()
        t_min, t_max = self._chord(polytope, tuple(backend.coerce(0) for _ in range(n)), direction)
        chord = scale_measure(t_max - t_min, length)
        heights = [dot(v, direction) for v in polytope.vertices]
        width = float(max(heights) - min(heights)) / float(length)

        section_volume = self.kernel.volume(section)
        projection_volume = self.kernel.volume(projection)
        body_volume = self.kernel.volume(polytope)
        lower_mixed = float(width) * float(section_volume) / float(body_volume)
        upper_mixed = float(projection_volume) * float(chord) / (n * float(body_volume))
        tolerance = self.context.tolerance
        low, high = PROJECTION_SECTION_INTERVAL

        circumradius_chain = inradius_chain = True
        if with_radii:
            bounds = self.isotropy.radii(polytope)
            circumradius_chain = float(width) <= 2 * float(bounds["R"]) * (1 + tolerance)
            inradius_chain = float(chord) >= 2 * float(bounds["r"]) * (1 - tolerance)
        return {
            "L_projection": L_projection,
            "L_section": L_section,
            "L_body": L_body,
            "ratio": ratio,
            "ratio_in_interval": low <= ratio <= high,
            "chord_length": chord,
            "section_volume": section_volume,
            "projection_volume": projection_volume,
            "body_volume": body_volume,
            "lower_mixed": lower_mixed,
            "lower_mixed_holds": lower_mixed >= 1 - tolerance,
            "upper_mixed": upper_mixed,
            "upper_mixed_holds": upper_mixed <= 1 + tolerance,
            "circumradius_chain": circumradius_chain,
            "inradius_chain": inradius_chain,
        }
