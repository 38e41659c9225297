import logging
from collections.abc import Sequence
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Any, Optional

from polyshadow.geometry.context import Context
from polyshadow.geometry.exceptions import (
    DegenerateSimplex,
    DimensionMismatch,
    EmptyInput,
    PointNotInPolytope,
)
from polyshadow.geometry.kernel import hull as hull_kernel
from polyshadow.geometry.kernel.linalg import (
    Matrix,
    Vector,
    add,
    det,
    dot,
    mat_add,
    mat_scale,
    matvec,
    outer,
    rank,
    scale,
    sub,
    trace_product,
    unit,
)
from polyshadow.geometry.kernel.scalar import Measure, Scalar, scale_measure
from polyshadow.geometry.utils import validate_dimensions
from polyshadow.models.polytope import Face, Polytope
from polyshadow.models.quadratic import QuadraticForm
from polyshadow.models.subspace import Subspace

logger = logging.getLogger(__name__)


class Moments:
    """
    Chart-weighted moments of a polytope: W = chart volume, S1 = ∫x, S2 = ∫x xᵀ,
    all divided by the chart measure scale so they stay rational in exact mode.
    """

    def __init__(self, weight: Scalar, first: Vector, second: Matrix, scale: Measure) -> None:
        self.weight = weight
        self.first = first
        self.second = second
        self.scale = scale

    @property
    def barycenter(self) -> Vector:
        return tuple(x / self.weight for x in self.first)

    def centered_second(self) -> Matrix:
        """(1/Vol)∫(x − b)(x − b)ᵀ."""
        b = self.barycenter
        raw = mat_scale(self.second, 1 / self.weight)
        return mat_add(raw, mat_scale(outer(b, b), -1))


class KernelOperations:
    """Hulls, face lattices, triangulations, volumes and quadratic integrals."""

    def __init__(self, context: Context) -> None:
        self.context = context
        self._standard_bodies: dict[tuple[str, int], Polytope] = {}

    @property
    def backend(self) -> Any:
        return self.context.backend

    def canonical_hull(self, points: Sequence[Sequence[Any]]) -> Polytope:
        """
        Canonical V-polytope of conv(points).

        Raises:
            EmptyInput: If ``points`` is empty.
            DimensionMismatch: If points differ in length.
        """
        return Polytope.from_points(points, self.backend)

    def face_lattice(self, polytope: Polytope) -> dict[int, list[Face]]:
        return {j: polytope.faces(j) for j in range(polytope.dim + 1)}

    def f_vector(self, polytope: Polytope) -> tuple[int, ...]:
        return polytope.f_vector()

    def minimal_face(self, polytope: Polytope, x: Sequence[Any]) -> Face:
        """The unique face whose relative interior contains x (x must lie in P)."""
        point = self.backend.vector(x)
        if not self.contains_point(polytope, point):
            raise PointNotInPolytope("point is not in the polytope", {"point": [str(v) for v in point]})
        magnitude = max([abs(float(v)) for v in point] + [1.0])
        ids = set(range(len(polytope.vertices)))
        for facet in polytope.facets:
            if self.backend.is_zero(dot(facet.normal, point) - facet.offset, magnitude):
                ids &= set(facet.vertex_ids)
        return polytope.face(ids)

    def triangulate(self, polytope: Polytope) -> list[tuple[int, ...]]:
        """Simplices (as vertex-id tuples) of a pulling triangulation of P."""
        if "triangulation" not in polytope._cache:
            polytope._cache["triangulation"] = hull_kernel.fan_triangulation(polytope.lattice)
        return polytope._cache["triangulation"]

    def _chart_simplex_volume(self, polytope: Polytope, simplex: Sequence[int]) -> Scalar:
        chart = polytope.chart
        coords = [chart.coords(polytope.vertices[i]) for i in simplex]
        edges = [list(sub(c, coords[0])) for c in coords[1:]]
        return abs(det(edges, self.backend)) / factorial(len(edges))

    def simplex_volume(self, vertices: Sequence[Sequence[Any]]) -> Measure:
        """Vol_k of a k-simplex in ℝⁿ: √det(GᵀG)/k!."""
        points = [self.backend.vector(v) for v in vertices]
        edges = [sub(p, points[0]) for p in points[1:]]
        gram = [[dot(a, b) for b in edges] for a in edges]
        value = det(gram, self.backend)
        if self.backend.is_zero(value):
            raise DegenerateSimplex("simplex vertices are affinely dependent", {"vertices": len(points)})
        root = self.backend.sqrt(value)
        return root / factorial(len(edges))

    def moments(self, polytope: Polytope) -> Moments:
        if "moments" in polytope._cache:
            return polytope._cache["moments"]
        backend = self.backend
        n = polytope.ambient_dim
        zero = backend.coerce(0)
        k = polytope.dim
        weight: Scalar = zero
        first: Vector = tuple([zero] * n)
        second: Matrix = [[zero] * n for _ in range(n)]
        if k == 0:
            v = polytope.vertices[0]
            moments = Moments(backend.coerce(1), v, outer(v, v), backend.coerce(1))
        else:
            denominator = (k + 1) * (k + 2)
            for simplex in self.triangulate(polytope):
                w = self._chart_simplex_volume(polytope, simplex)
                points = [polytope.vertices[i] for i in simplex]
                total = points[0]
                for p in points[1:]:
                    total = add(total, p)
                local = outer(total, total)
                for p in points:
                    local = mat_add(local, outer(p, p))
                weight = weight + w
                first = add(first, scale(total, w / (k + 1)))
                second = mat_add(second, mat_scale(local, w / denominator))
            moments = Moments(weight, first, second, polytope.chart.measure_scale(backend))
        polytope._cache["moments"] = moments
        return moments

    def volume(self, polytope: Polytope) -> Measure:
        """k-dimensional volume of P inside aff P; a point has volume 1."""
        moments = self.moments(polytope)
        return scale_measure(moments.weight, moments.scale)

    def simplex_second_moment(self, vertices: Sequence[Sequence[Any]]) -> tuple[Vector, Matrix]:
        """
        Barycenter and M = (1/Vol)∫ x xᵀ of a simplex.

        Raises:
            DegenerateSimplex: If the vertices are affinely dependent.
        """
        points = [self.backend.vector(v) for v in vertices]
        if not points:
            raise EmptyInput("simplex has no vertices")
        validate_dimensions(len(points[0]), *points)
        k = len(points) - 1
        if k > 0 and rank([list(sub(p, points[0])) for p in points[1:]], self.backend) < k:
            raise DegenerateSimplex("simplex vertices are affinely dependent", {"vertices": k + 1})
        total = points[0]
        for p in points[1:]:
            total = add(total, p)
        matrix = outer(total, total)
        for p in points:
            matrix = mat_add(matrix, outer(p, p))
        barycenter = scale(total, self.backend.coerce(Fraction(1, k + 1)))
        return barycenter, mat_scale(matrix, self.backend.coerce(Fraction(1, (k + 1) * (k + 2))))

    def integrate_quadratic(self, polytope: Polytope, f: QuadraticForm) -> Measure:
        """∫_P f dλ over aff P, exact in exact mode."""
        if f.ambient_dim != polytope.ambient_dim:
            raise DimensionMismatch(
                "quadratic form and polytope live in different dimensions",
                {"form": f.ambient_dim, "polytope": polytope.ambient_dim},
            )
        moments = self.moments(polytope)
        chart_integral = (
            f.constant * moments.weight
            + dot(f.linear, moments.first)
            + trace_product(f.quadratic, moments.second)
        )
        return scale_measure(chart_integral, moments.scale)

    def mean_value(self, polytope: Polytope, f: QuadraticForm) -> Scalar:
        """(1/Vol)∫_P f, which is rational in exact mode."""
        moments = self.moments(polytope)
        return (
            f.constant * moments.weight
            + dot(f.linear, moments.first)
            + trace_product(f.quadratic, moments.second)
        ) / moments.weight

    def contains_point(self, polytope: Polytope, x: Sequence[Any]) -> bool:
        """x ∈ P, decided on the affine hull and the facet inequalities."""
        point = self.backend.vector(x)
        validate_dimensions(polytope.ambient_dim, point)
        magnitude = max([abs(float(v)) for v in point] + [abs(float(v)) for v in polytope.vertices[0]] + [1.0])
        chart = polytope.chart
        lifted = chart.lift(chart.coords(point))
        if not all(self.backend.is_zero(a - b, magnitude) for a, b in zip(lifted, point)):
            return False
        return all(
            self.backend.sign(dot(f.normal, point) - f.offset, magnitude) <= 0 for f in polytope.facets
        )

    def project(self, polytope: Polytope, subspace: Subspace) -> Polytope:
        """P_E P as a polytope in ℝⁿ, hulled from the projected vertices."""
        if subspace.ambient_dim != polytope.ambient_dim:
            raise DimensionMismatch(
                "subspace and polytope live in different dimensions",
                {"subspace": subspace.ambient_dim, "polytope": polytope.ambient_dim},
            )
        return self.canonical_hull([subspace.project(v) for v in polytope.vertices])

    def apply_affine(
        self,
        polytope: Polytope,
        matrix: Sequence[Sequence[Any]],
        translation: Optional[Sequence[Any]] = None,
    ) -> Polytope:
        a = [list(self.backend.vector(row)) for row in matrix]
        if any(len(row) != polytope.ambient_dim for row in a):
            raise DimensionMismatch("matrix columns must match the ambient dimension")
        b = self.backend.vector(translation) if translation is not None else None
        images = [matvec(a, v) for v in polytope.vertices]
        if b is not None:
            images = [add(v, b) for v in images]
        return self.canonical_hull(images)

    def halfspace_vertices(
        self, normals: Sequence[Sequence[Any]], offsets: Sequence[Any]
    ) -> list[Vector]:
        return hull_kernel.halfspace_vertices(
            [self.backend.vector(a) for a in normals], self.backend.vector(offsets), self.backend
        )

    def cube(self, d: int, lo: Any = 0, hi: Any = 1) -> Polytope:
        low, high = self.backend.coerce(lo), self.backend.coerce(hi)
        return self.canonical_hull([tuple(p) for p in product((low, high), repeat=d)])

    def cross_polytope(self, n: int) -> Polytope:
        """B₁ⁿ = conv{±e_i}, built once per n so its lattice and cone caches are shared."""
        key = ("cross_polytope", n)
        if key not in self._standard_bodies:
            points: list[Vector] = []
            for i in range(n):
                e = unit(n, i, self.backend)
                points.extend([e, tuple(-x for x in e)])
            self._standard_bodies[key] = self.canonical_hull(points)
        return self._standard_bodies[key]

    def standard_simplex(self, n: int) -> Polytope:
        """Δₙ = conv{e_1, ..., e_{n+1}} ⊂ ℝ^{n+1}, built once per n."""
        key = ("standard_simplex", n)
        if key not in self._standard_bodies:
            vertices = [unit(n + 1, i, self.backend) for i in range(n + 1)]
            self._standard_bodies[key] = self.canonical_hull(vertices)
        return self._standard_bodies[key]

    def regular_simplex(self, d: int) -> Polytope:
        """S_d: Δ_d translated so its barycenter is the origin of H ⊂ ℝ^{d+1}."""
        shift = self.backend.coerce(Fraction(1, d + 1))
        return self.canonical_hull(
            [tuple(x - shift for x in unit(d + 1, i, self.backend)) for i in range(d + 1)]
        )
