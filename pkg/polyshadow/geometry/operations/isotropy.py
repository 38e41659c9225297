import logging
import math
from collections.abc import Sequence
from typing import Any, Optional

import numpy as np
from scipy.special import comb, gamma

from polyshadow.geometry.context import Context, Seed
from polyshadow.geometry.exceptions import (
    DegeneratePolytope,
    DimensionMismatch,
    NotSymmetric,
    OriginOutside,
    RankDeficient,
)
from polyshadow.geometry.kernel.linalg import (
    Chart,
    Vector,
    centroid,
    det,
    dot,
    gram_schmidt,
    matvec,
    norm2,
    rank,
    sub,
    transpose,
    zeros,
)
from polyshadow.geometry.kernel.scalar import Measure, measure_quotient, scale_measure
from polyshadow.geometry.operations.kernel import KernelOperations, Moments
from polyshadow.geometry.types import Radii, RogersShephard, VolumeRadiusEstimate, WhiteningBound
from polyshadow.models.inertia import AffineMap, Embedding, InertiaReport
from polyshadow.models.polytope import Polytope
from polyshadow.models.subspace import Subspace

logger = logging.getLogger(__name__)


class IsotropyOperations:
    """Covariance, isotropy constants, radii and the linear embedding constructions."""

    def __init__(self, context: Context, kernel: KernelOperations) -> None:
        self.context = context
        self.kernel = kernel

    @property
    def backend(self) -> Any:
        return self.context.backend

    def inertia(self, polytope: Polytope) -> InertiaReport:
        """
        Volume, barycenter, centred covariance and L of P inside its affine hull.

        Raises:
            DegeneratePolytope: If P is a single point.
        """
        if polytope.dim == 0:
            raise DegeneratePolytope("a point has no covariance", {"vertices": len(polytope.vertices)})
        return self.report_from_moments(polytope.dim, self.kernel.moments(polytope), polytope.chart)

    def report_from_moments(self, k: int, moments: Moments, chart: Chart) -> InertiaReport:
        """
        Assemble an InertiaReport from chart-weighted moments of a k-dimensional body whose
        direction space is spanned by the orthogonal basis of ``chart``.
        """
        backend = self.backend
        volume = scale_measure(moments.weight, moments.scale)
        barycenter = moments.barycenter
        covariance = moments.centered_second()

        basis = chart.basis
        projected = [[dot(a, matvec(covariance, b)) for b in basis] for a in basis]
        gram = chart.gram_det()
        det_chart = det(projected, backend) / gram
        if backend.sign(det_chart) <= 0:
            raise DegeneratePolytope("covariance is singular in the affine hull", {"dim": k})

        q = np.array([[float(x) for x in b] for b in basis], dtype=float)
        q /= np.sqrt(np.array([float(nb) for nb in chart.norms2]))[:, None]
        cov = np.array([[float(x) for x in row] for row in covariance], dtype=float)
        chart_cov = q @ cov @ q.T
        chart_cov = (chart_cov + chart_cov.T) / 2

        log_volume = math.log(float(volume))
        L = math.exp(math.log(float(det_chart)) / (2 * k) - log_volume / k)

        eigenvalues, eigenvectors = np.linalg.eigh(chart_cov)
        eigenvalues = np.maximum(eigenvalues, self.context.tolerance**2)
        inverse_root = eigenvectors @ np.diag(eigenvalues**-0.5) @ eigenvectors.T
        matrix = L * inverse_root @ q
        translation = -matrix @ np.array([float(x) for x in barycenter])
        iso_map = AffineMap(matrix.tolist(), translation.tolist())
        logger.debug("inertia: k=%d volume=%s L=%.9f", k, volume, L)
        return InertiaReport(k, volume, barycenter, covariance, chart_cov.tolist(), L, iso_map, det_chart)

    def isotropy_constant(self, polytope: Polytope) -> float:
        return self.inertia(polytope).L

    def isotropic_position(self, polytope: Polytope) -> Polytope:
        """The image of P under its iso_map: volume 1, barycenter 0, covariance L²·I in ℝᵏ."""
        iso_map = self.inertia(polytope).iso_map
        return self.kernel.canonical_hull([iso_map([float(x) for x in v]) for v in polytope.vertices])

    def radii(self, polytope: Polytope, about_barycenter: bool = False) -> Radii:
        """
        Inradius r and circumradius R of P about the origin (or about its barycenter),
        measured inside aff P.

        Raises:
            OriginOutside: If the centre is not in the relative interior of P.
        """
        backend = self.backend
        if about_barycenter:
            center = self.kernel.moments(polytope).barycenter
        else:
            center = zeros(polytope.ambient_dim, backend)
        if not self.kernel.contains_point(polytope, center):
            raise OriginOutside("the centre is not in the polytope", {"center": [str(x) for x in center]})

        magnitude = max([abs(float(x)) for x in polytope.vertices[0]] + [1.0])
        candidates: list[Measure] = []
        for facet in polytope.facets:
            slack = facet.offset - dot(facet.normal, center)
            if backend.sign(slack, magnitude) <= 0:
                raise OriginOutside("the centre lies on the boundary", {"facet": list(facet.vertex_ids)})
            candidates.append(backend.sqrt(slack * slack / norm2(facet.normal)))
        r = min(candidates, key=float) if candidates else backend.coerce(0)
        R = backend.sqrt(max(norm2(sub(v, center)) for v in polytope.vertices))
        return {"r": r, "R": R, "center": center}

    def embed_as_b1_projection(
        self, body: Polytope, vectors: Optional[Sequence[Sequence[Any]]] = None
    ) -> Embedding:
        """
        E ⊆ ℝⁿ and a linear isomorphism T: E → ℝ^d with T(P_E B₁ⁿ) = K = conv{±v_i}.

        Without ``vectors``, one representative of each antipodal vertex pair is used.

        Raises:
            NotSymmetric: If K's vertex set is not closed under negation.
            RankDeficient: If the v_i do not span ℝ^d.
        """
        backend = self.backend
        if vectors is None:
            vectors = _antipodal_representatives(body, backend)
        columns = [backend.vector(v) for v in vectors]
        if any(len(v) != body.ambient_dim for v in columns):
            raise DimensionMismatch("generator vectors must live in the body's space")
        linear = transpose(columns)
        return self._row_space_embedding(linear, zeros(body.ambient_dim, backend))

    def embed_as_simplex_projection(
        self, body: Polytope, vectors: Optional[Sequence[Sequence[Any]]] = None
    ) -> Embedding:
        """
        E ⊆ H ⊂ ℝ^{n+1} and an affine isomorphism with iso(P_E Δₙ) = K = conv{v_0, ..., v_n}.

        T e_i = v_i − c for the mean c, so T kills (1, ..., 1) and its row space lies in H.

        Raises:
            RankDeficient: If the v_i are affinely dependent in ℝ^d beyond dim K.
        """
        backend = self.backend
        points = [backend.vector(v) for v in (vectors if vectors is not None else body.vertices)]
        center = centroid(points)
        linear = transpose([sub(v, center) for v in points])
        return self._row_space_embedding(linear, center)

    def _row_space_embedding(self, linear: list[list[Any]], translation: Vector) -> Embedding:
        d = len(linear)
        if rank(linear, self.backend) < d:
            raise RankDeficient("generator vectors do not span the ambient space", {"d": d})
        basis = gram_schmidt([tuple(row) for row in linear], self.backend, pivoting=True)
        return Embedding(Subspace(basis, self.backend), linear, translation)

    def minkowski_difference_body(self, polytope: Polytope) -> Polytope:
        """K − K = conv{v_i − v_j}."""
        return self.kernel.canonical_hull([sub(a, b) for a in polytope.vertices for b in polytope.vertices])

    def rogers_shephard(self, polytope: Polytope) -> RogersShephard:
        """Vol(K − K)/Vol(K) against the bound C(2k, k)."""
        k = polytope.dim
        difference = self.minkowski_difference_body(polytope)
        volumes = self.kernel.volume(difference), self.kernel.volume(polytope)
        ratio = measure_quotient(*volumes, self.backend)
        bound = int(comb(2 * k, k, exact=True))
        holds = float(ratio) <= bound * (1 + self.context.tolerance)
        return {"ratio": ratio, "bound": bound, "holds": holds}

    def deterministic_bound_check(self, polytope: Polytope) -> float:
        """L_K·√(d/n) for a d-dimensional K with n vertices."""
        return self.isotropy_constant(polytope) * math.sqrt(polytope.dim / len(polytope.vertices))

    def whitening_bound(self, polytope: Polytope) -> WhiteningBound:
        """L² ≤ (1/k)·Vol^{−2/k}·(1/Vol)∫|x|²."""
        report = self.inertia(polytope)
        moments = self.kernel.moments(polytope)
        mean_square = float(sum(moments.second[i][i] for i in range(polytope.ambient_dim)) / moments.weight)
        k = report.dim
        bound = mean_square / k * float(report.volume) ** (-2 / k)
        L_squared = report.L**2
        return {
            "L_squared": L_squared,
            "bound": bound,
            "holds": L_squared <= bound * (1 + self.context.tolerance),
        }

    def volume_radius_estimate(
        self, subspace: Subspace, samples: int = 64, seed: Seed = None
    ) -> VolumeRadiusEstimate:
        """
        Vol_d(P_E B₁ⁿ)^{1/d} against n^{−1/2}·Vol(B₂^d)^{1/d}, with sampled points of
        n^{−1/2}(S^{n−1} ∩ E) checked for membership in P_E B₁ⁿ.
        """
        n, d = subspace.ambient_dim, subspace.dim
        body = self.kernel.project(self.kernel.cross_polytope(n), subspace)
        volume_radius = float(self.kernel.volume(body)) ** (1 / d)
        ball_radius = (math.pi ** (d / 2) / gamma(d / 2 + 1)) ** (1 / d)
        lower = ball_radius / math.sqrt(n)

        rng = self.context.generator(seed)
        basis = np.array([[float(x) for x in b] for b in subspace.basis])
        onb = np.linalg.qr(basis.T)[0].T
        inside = 0
        for _ in range(samples):
            g = rng.standard_normal(d)
            x = onb.T @ (g / np.linalg.norm(g)) / math.sqrt(n)
            # slightly inside the sphere so exact rounding of x cannot push it out
            point = self.backend.vector(x * (1 - 1e-12))
            if self.kernel.contains_point(body, point):
                inside += 1
        holds = volume_radius >= lower * (1 - self.context.tolerance) and inside == samples
        return {
            "volume_radius": volume_radius,
            "lower_bound": lower,
            "holds": holds,
            "ball_points_checked": samples,
            "ball_points_inside": inside,
        }


def _antipodal_representatives(body: Polytope, backend: Any) -> list[Vector]:
    vertices = list(body.vertices)
    magnitude = max([abs(float(x)) for v in vertices for x in v] + [1.0])
    remaining = list(range(len(vertices)))
    representatives: list[Vector] = []
    while remaining:
        i = remaining.pop(0)
        v = vertices[i]
        partner = next(
            (
                j
                for j in remaining
                if all(backend.is_zero(a + b, magnitude) for a, b in zip(v, vertices[j]))
            ),
            None,
        )
        if partner is None:
            raise NotSymmetric("vertex has no antipodal partner", {"vertex": i})
        remaining.remove(partner)
        representatives.append(v)
    return representatives
