"""
Convex hull canonicalisation and face lattices.

Facets are found inside an affine chart of the point set, so lower-dimensional inputs
are handled the same way as full-dimensional ones. Faces are stored as vertex bitmasks.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from polyshadow.geometry.exceptions import DimensionMismatch, EmptyInput, RankDeficient

from .linalg import Chart, Vector, dot, norm2, nullspace, scale, solve, sub
from .scalar import Backend, Scalar

logger = logging.getLogger(__name__)

BRUTE_FORCE_LIMIT = 20000


@dataclass(frozen=True)
class FaceLattice:
    """
    All faces of a polytope as vertex bitmasks, grouped by dimension.

    ``children`` maps each face of dimension j ≥ 1 to its facets (faces of dimension j − 1).
    """

    levels: dict[int, tuple[int, ...]]
    children: dict[int, tuple[int, ...]] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return max(self.levels)

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.levels[j]) for j in range(self.dim))

    def dimension_of(self, mask: int) -> Optional[int]:
        for j, faces in self.levels.items():
            if mask in faces:
                return j
        return None


@dataclass(frozen=True)
class HullFacet:
    normal: Vector
    offset: Scalar
    mask: int


@dataclass(frozen=True)
class HullData:
    vertices: tuple[Vector, ...]
    dim: int
    chart: Chart
    facets: tuple[HullFacet, ...]
    lattice: FaceLattice


def mask_of(ids: Iterable[int]) -> int:
    mask = 0
    for i in ids:
        mask |= 1 << i
    return mask


def ids_of(mask: int) -> tuple[int, ...]:
    ids = []
    i = 0
    while mask:
        if mask & 1:
            ids.append(i)
        mask >>= 1
        i += 1
    return tuple(ids)


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def validate_points(points: Sequence[Sequence[object]], backend: Backend) -> list[Vector]:
    if not points:
        raise EmptyInput("point set is empty")
    n = len(points[0])
    if n == 0:
        raise DimensionMismatch("points must have at least one coordinate")
    for index, point in enumerate(points):
        if len(point) != n:
            raise DimensionMismatch(
                "points have different ambient dimensions",
                {"expected": n, "index": index, "got": len(point)},
            )
    return [backend.vector(point) for point in points]


def dedupe(points: Sequence[Vector], backend: Backend) -> list[Vector]:
    if backend.exact:
        return list(dict.fromkeys(points))
    unique: list[Vector] = []
    for point in points:
        if not any(
            backend.is_zero(float(norm2(sub(point, other))) ** 0.5, max(map(abs, point)))
            for other in unique
        ):
            unique.append(point)
    return unique


def _canonical(normal: Vector, backend: Backend) -> Vector:
    if backend.exact:
        largest = max(abs(x) for x in normal)
        return scale(normal, 1 / largest)
    length = float(norm2(normal)) ** 0.5
    return scale(normal, 1 / length)


def _hyperplane(
    coords: Sequence[Vector], subset: Sequence[int], k: int, backend: Backend
) -> Optional[tuple[Vector, Scalar, int]]:
    """Supporting hyperplane through the subset with every point on its non-positive side."""
    base = coords[subset[0]]
    rows = [list(sub(coords[i], base)) for i in subset[1:]]
    kernel = nullspace(rows, k, backend)
    if len(kernel) != 1:
        return None
    normal = _canonical(kernel[0], backend)
    offset = dot(normal, base)
    magnitude = max((abs(float(x)) for c in coords for x in c), default=1.0)
    above = below = False
    on = 0
    for i, c in enumerate(coords):
        s = backend.sign(dot(normal, c) - offset, magnitude)
        if s == 0:
            on |= 1 << i
        elif s > 0:
            above = True
        else:
            below = True
        if above and below:
            return None
    if above:
        normal = tuple(-x for x in normal)
        offset = -offset
    return normal, offset, on


def _proposals(coords: Sequence[Vector], k: int) -> Optional[list[tuple[int, ...]]]:
    try:
        hull = ConvexHull(np.array([[float(x) for x in c] for c in coords]))
    except (QhullError, ValueError):
        logger.debug("qhull rejected %d points in dimension %d", len(coords), k)
        return None
    return [tuple(sorted(int(i) for i in simplex)) for simplex in hull.simplices]


def enumerate_facets(
    coords: Sequence[Vector], k: int, backend: Backend
) -> list[tuple[Vector, Scalar, int]]:
    """Facets of conv(coords) ⊂ ℝᵏ as (normal, offset, point mask), for full-dimensional input."""
    if k == 1:
        values = [c[0] for c in coords]
        lo, hi = min(values), max(values)
        one = backend.coerce(1)
        return [
            ((-one,), -lo, mask_of(i for i, v in enumerate(values) if backend.is_zero(v - lo))),
            ((one,), hi, mask_of(i for i, v in enumerate(values) if backend.is_zero(v - hi))),
        ]

    candidates: Optional[list[tuple[int, ...]]] = None
    if comb(len(coords), k) > BRUTE_FORCE_LIMIT:
        candidates = _proposals(coords, k)

    if candidates is not None:
        facets = _collect(coords, candidates, k, backend, strict=True)
        if facets is not None:
            return facets
        logger.debug("qhull proposals failed exact verification; enumerating all subsets")

    facets = _collect(coords, combinations(range(len(coords)), k), k, backend, strict=False)
    assert facets is not None
    return facets


def _collect(
    coords: Sequence[Vector],
    candidates: Iterable[tuple[int, ...]],
    k: int,
    backend: Backend,
    strict: bool,
) -> Optional[list[tuple[Vector, Scalar, int]]]:
    found: dict[int, tuple[Vector, Scalar, int]] = {}
    for subset in candidates:
        subset_mask = mask_of(subset)
        if any(subset_mask & mask == subset_mask for mask in found):
            continue
        plane = _hyperplane(coords, subset, k, backend)
        if plane is None:
            if strict:
                return None
            continue
        found.setdefault(plane[2], plane)
    return list(found.values())


def build_lattice(k: int, nverts: int, facet_masks: Sequence[int]) -> FaceLattice:
    """
    Top-down face lattice: the facets of a face F are the maximal proper non-empty
    intersections of F with facets of the polytope.
    """
    top = (1 << nverts) - 1
    if k == 0:
        return FaceLattice({0: (top,)})
    levels: dict[int, tuple[int, ...]] = {k: (top,), k - 1: tuple(sorted(facet_masks))}
    children: dict[int, tuple[int, ...]] = {top: levels[k - 1]}
    for j in range(k - 1, 0, -1):
        below: set[int] = set()
        for face in levels[j]:
            meets = {face & g for g in facet_masks}
            meets.discard(0)
            meets.discard(face)
            kept: list[int] = []
            for m in sorted(meets, key=int.bit_count, reverse=True):
                if not any(m & o == m for o in kept):
                    kept.append(m)
            maximal = tuple(sorted(kept))
            children[face] = maximal
            below.update(maximal)
        levels[j - 1] = tuple(sorted(below))
    return FaceLattice(levels, children)


def fan_triangulation(lattice: FaceLattice) -> list[tuple[int, ...]]:
    """Pulling triangulation: cone from the lowest vertex over faces that avoid it."""
    memo: dict[int, list[tuple[int, ...]]] = {}

    def triangulate(mask: int, j: int) -> list[tuple[int, ...]]:
        if mask in memo:
            return memo[mask]
        if j == 0:
            result = [(lowest(mask),)]
        else:
            apex = lowest(mask)
            result = [
                simplex + (apex,)
                for child in lattice.children[mask]
                if not child >> apex & 1
                for simplex in triangulate(child, j - 1)
            ]
        memo[mask] = result
        return result

    k = lattice.dim
    return [tuple(sorted(s)) for s in triangulate(lattice.levels[k][0], k)]


def build_hull(points: Sequence[Sequence[object]], backend: Backend) -> HullData:
    """Extreme points, intrinsic dimension, facets and face lattice of conv(points)."""
    vectors = dedupe(validate_points(points, backend), backend)
    chart = Chart.through(vectors, backend)
    k = chart.dim
    logger.debug("hull of %d points, intrinsic dimension %d", len(vectors), k)

    if k == 0:
        return HullData((vectors[0],), 0, chart, (), build_lattice(0, 1, ()))

    coords = [chart.coords(v) for v in vectors]
    facets = enumerate_facets(coords, k, backend)

    keep: list[int] = []
    for i in range(len(vectors)):
        meet = -1
        touched = False
        for _, _, mask in facets:
            if mask >> i & 1:
                meet &= mask
                touched = True
        if touched and meet == 1 << i:
            keep.append(i)
    reindex = {old: new for new, old in enumerate(keep)}

    def remap(mask: int) -> int:
        return mask_of(reindex[i] for i in ids_of(mask) if i in reindex)

    hull_facets = []
    for normal, offset, mask in facets:
        ambient = chart.lift_direction(normal)
        hull_facets.append(HullFacet(ambient, offset + dot(ambient, chart.origin), remap(mask)))
    hull_facets.sort(key=lambda f: ids_of(f.mask))
    vertices = tuple(vectors[i] for i in keep)
    lattice = build_lattice(k, len(vertices), [f.mask for f in hull_facets])
    logger.debug("hull has %d vertices and %d facets", len(vertices), len(hull_facets))
    return HullData(vertices, k, Chart.through(list(vertices), backend), tuple(hull_facets), lattice)


def halfspace_vertices(
    normals: Sequence[Sequence[Scalar]],
    offsets: Sequence[Scalar],
    backend: Backend,
) -> list[Vector]:
    """Vertices of the bounded set {x : ⟨a_i, x⟩ ≤ h_i} by solving every square subsystem."""
    if not normals:
        return []
    n = len(normals[0])
    magnitude = max([abs(float(h)) for h in offsets] + [1.0])
    vertices: list[Vector] = []
    for subset in combinations(range(len(normals)), n):
        try:
            x = solve([list(normals[i]) for i in subset], [offsets[i] for i in subset], backend)
        except RankDeficient:
            continue
        if all(backend.sign(dot(a, x) - h, magnitude) <= 0 for a, h in zip(normals, offsets)):
            vertices.append(x)
    return dedupe(vertices, backend)
