from typing import Any, NotRequired, Optional, TypedDict

from polyshadow.geometry.kernel.linalg import Vector
from polyshadow.geometry.kernel.scalar import Measure


class PairVerdict(TypedDict):
    """Relative interiors of P_E F_i and P_E F_j are disjoint."""

    i: int
    j: int
    disjoint: bool


class TilingReport(TypedDict):
    pairs: list[PairVerdict]
    all_disjoint: bool
    sampled: bool
    face_volume_sum: Measure
    oracle_volume: Measure
    residual: Measure
    relative_residual: float
    ranks: list[int]
    injective: bool
    full_family_dims: NotRequired[list[int]]
    full_family_ok: NotRequired[bool]


class MomentBound(TypedDict):
    lhs: Measure
    rhs: Measure
    holds: bool


class ProjectionLBound(TypedDict):
    L_squared: float
    bound: float
    holds: bool


class Radii(TypedDict):
    r: Measure
    R: Measure
    center: Vector


class RogersShephard(TypedDict):
    ratio: Measure
    bound: int
    holds: bool


class VolumeRadiusEstimate(TypedDict):
    volume_radius: float
    lower_bound: float
    holds: bool
    ball_points_checked: int
    ball_points_inside: int


class WhiteningBound(TypedDict):
    L_squared: float
    bound: float
    holds: bool


class SteinerChecks(TypedDict):
    """Inertia identities for an isotropic input and its Steiner symmetral."""

    orthogonal_moments: list[float]
    orthogonal_residual: float
    mixed_moments: list[float]
    mixed_residual: float
    sigma_squared: Measure
    sigma_squared_moment: Measure
    sigma_ok: bool
    identity_residual: float
    identity_ok: bool
    monotone: bool
    lower_sandwich_gap: float
    sandwich_constant: float
    section_volume_ratio: float
    projection_equals_section: bool
    reflection_symmetric: bool
    passed: bool


class ProjectionSectionReport(TypedDict):
    L_projection: float
    L_section: float
    L_body: float
    ratio: float
    ratio_in_interval: bool
    chord_length: Measure
    section_volume: Measure
    projection_volume: Measure
    body_volume: Measure
    lower_mixed: float
    lower_mixed_holds: bool
    upper_mixed: float
    upper_mixed_holds: bool
    circumradius_chain: bool
    inradius_chain: bool


class Quantiles(TypedDict):
    min: float
    median: float
    q90: float
    max: float


class DimensionSummary(TypedDict):
    d: int
    trials: int
    completed: int
    ratio: Quantiles
    L: Quantiles
    tail_counts: dict[str, int]
    max_faces: int
    union_bound: int


class ExperimentSummary(TypedDict):
    schema_version: int
    config: dict[str, Any]
    completed: int
    skipped: int
    errors: list[dict[str, Any]]
    by_dimension: list[DimensionSummary]
    max_ratio: Optional[float]
    pilot_bound: float
    within_pilot: bool
    scaling_bound: float
    within_scaling: bool
    cross_checks: int
    max_cross_check_error: Optional[float]
    out_of_range_regime: bool
    regime_note: str


class BernsteinTail(TypedDict):
    epsilons: list[float]
    frequencies: list[float]
    monotone: bool
    max_faces: int
    union_bound: int


class InradiusEvent(TypedDict):
    threshold: float
    frequency: float
    trials: int
    meets_target: bool


class ConeIdentity(TypedDict):
    lhs: Any
    rhs: Any
    holds: bool
