import csv
import logging
import math
import time
from collections.abc import Iterator, Sequence
from fractions import Fraction
from functools import lru_cache
from typing import IO, Any, Optional

import numpy as np
from scipy.linalg import orth
from scipy.special import comb

from polyshadow.geometry.constants import (
    CROSS_CHECK_RTOL,
    CSV_COLUMNS,
    EXPERIMENT_SCHEMA_VERSION,
    INRADIUS_EVENT_THRESHOLD,
    PILOT_RATIO_BOUND,
    PILOT_RATIO_SLACK,
    SCALING_RATIO_BOUND,
)
from polyshadow.geometry.context import Context, Seed
from polyshadow.geometry.exceptions import (
    DegenerateHull,
    OriginOutside,
    PolyshadowError,
    PreconditionViolated,
    RankDeficient,
)
from polyshadow.geometry.kernel.linalg import Vector, dot, norm2
from polyshadow.geometry.operations.cones import RATIONAL_DENOMINATOR, ConeOperations
from polyshadow.geometry.operations.isotropy import IsotropyOperations
from polyshadow.geometry.operations.kernel import KernelOperations
from polyshadow.geometry.operations.shadow import ShadowOperations
from polyshadow.geometry.types import BernsteinTail, DimensionSummary, ExperimentSummary, InradiusEvent, Quantiles
from polyshadow.geometry.utils import resample_on, validate_subspace_dim, validate_trials, validate_vertex_count
from polyshadow.models.experiment import ExperimentConfig, ExperimentRecord
from polyshadow.models.polytope import Polytope
from polyshadow.models.subspace import Subspace

logger = logging.getLogger(__name__)

TAIL_THRESHOLDS = (0.4, 0.5, PILOT_RATIO_BOUND)

TrialOutcome = tuple[int, Optional[ExperimentRecord], Optional[dict[str, Any]]]


class LabOperations:
    """Random subspaces and bodies, and the projection experiments built on them."""

    def __init__(
        self,
        context: Context,
        kernel: KernelOperations,
        cones: ConeOperations,
        shadow: ShadowOperations,
        isotropy: IsotropyOperations,
    ) -> None:
        self.context = context
        self.kernel = kernel
        self.cones = cones
        self.shadow = shadow
        self.isotropy = isotropy

    @property
    def backend(self) -> Any:
        return self.context.backend

    def _rational(self, values: np.ndarray) -> list[Any]:
        if self.backend.exact:
            return [Fraction(float(x)).limit_denominator(RATIONAL_DENOMINATOR) for x in values]
        return [float(x) for x in values]

    def _row_space(self, gaussian: np.ndarray) -> Subspace:
        d = gaussian.shape[0]
        if self.backend.exact:
            rows = [tuple(self._rational(row)) for row in gaussian]
            subspace = Subspace.span(rows, self.backend)
        else:
            basis = orth(gaussian.T)
            if basis.shape[1] < d:
                raise RankDeficient("Gaussian matrix is rank deficient", {"d": d})
            subspace = Subspace([tuple(float(x) for x in column) for column in basis.T], self.backend)
        if subspace.dim < d:
            raise RankDeficient("Gaussian matrix is rank deficient", {"d": d})
        return subspace

    def random_subspace(self, n: int, d: int, seed: Seed = None) -> Subspace:
        """Haar-random E ∈ G_{n,d}: the row space of a d×n standard Gaussian matrix."""
        validate_subspace_dim(n, d)
        rng = self.context.generator(seed)
        return self._row_space(rng.standard_normal((d, n)))

    def random_subspace_in_H(self, n: int, d: int, seed: Seed = None) -> Subspace:
        """Haar-random d-subspace of H = (1, ..., 1)⊥ ⊂ ℝ^{n+1}, from row-centred Gaussians."""
        validate_subspace_dim(n, d)
        rng = self.context.generator(seed)
        gaussian = rng.standard_normal((d, n + 1))
        if self.backend.exact:
            rational = [self._rational(row) for row in gaussian]
            centred = [tuple(x - sum(row) / (n + 1) for x in row) for row in rational]
            subspace = Subspace.span(centred, self.backend)
            if subspace.dim < d:
                raise RankDeficient("Gaussian matrix is rank deficient", {"d": d})
            return subspace
        return self._row_space(gaussian - gaussian.mean(axis=1, keepdims=True))

    def random_sphere_polytope(self, n: int, m: int, symmetric: bool = True, seed: Seed = None) -> Polytope:
        """
        conv{±P_1, ..., ±P_m} (symmetric) or conv{P_0, ..., P_m} for i.i.d. uniform P_i ∈ S^{n−1}.

        Raises:
            RetriesExhausted: If degenerate hulls keep being drawn.
        """
        validate_vertex_count(n, m)
        return self._sphere_body(n, m, symmetric, self.context.generator(seed))

    @resample_on(DegenerateHull)
    def _sphere_body(self, n: int, m: int, symmetric: bool, rng: np.random.Generator) -> Polytope:
        count = m if symmetric else m + 1
        points = [self._sphere_point(n, rng) for _ in range(count)]
        if symmetric:
            points = points + [tuple(-x for x in p) for p in points]
        body = self.kernel.canonical_hull(points)
        if body.dim < n:
            raise DegenerateHull("random points do not span the space", {"dim": body.dim, "n": n})
        return body

    def _sphere_point(self, n: int, rng: np.random.Generator) -> Vector:
        while True:
            g = rng.standard_normal(n)
            size = np.linalg.norm(g)
            if size > 0:
                break
        x = g / size
        if not self.backend.exact:
            return tuple(float(v) for v in x)
        # inverse stereographic projection of a rational point is exactly on the sphere
        if x[-1] >= 1:
            return self.backend.vector([0] * (n - 1) + [1])
        z = self._rational(x[:-1] / (1 - x[-1]))
        size2 = sum(c * c for c in z)
        return tuple([2 * c / (size2 + 1) for c in z] + [(size2 - 1) / (size2 + 1)])

    def bernstein_face_sums(self, body: Polytope, d: int) -> list[Any]:
        """
        S_F = Σ_{i≠j} ⟨Q_i, Q_j⟩ over the vertices of every d-face F.

        Raises:
            PreconditionViolated: If some vertex is not a unit vector.
        """
        if not all(self.backend.is_zero(norm2(v) - 1) for v in body.vertices):
            raise PreconditionViolated("Bernstein sums need unit-norm vertices")
        sums = []
        for face in body.faces(d):
            points = face.points
            total = tuple(sum(column) for column in zip(*points))
            sums.append(dot(total, total) - sum(norm2(p) for p in points))
        return sums

    def _body(self, config: ExperimentConfig, rng: np.random.Generator) -> Polytope:
        if config.kind == "b1":
            return self.kernel.cross_polytope(config.n)
        if config.kind == "simplex":
            return self.kernel.standard_simplex(config.n)
        return self._sphere_body(config.n, config.m, config.symmetric, rng)

    def run_trial(self, config: ExperimentConfig, trial: int) -> ExperimentRecord:
        """One trial on the stream SeedSequence([seed, trial]), independent of scheduling."""
        started = time.perf_counter()
        sequence = np.random.SeedSequence([config.seed, trial])
        trial_seed = int(sequence.generate_state(1, dtype=np.uint64)[0])
        rng = np.random.default_rng(sequence)
        n, d = config.n, config.trial_dim(trial)

        body = self._body(config, rng)
        if config.kind == "simplex":
            subspace = self.random_subspace_in_H(n, d, rng)
        else:
            subspace = self.random_subspace(n, d, rng)
        direction = self.cones.generic_direction(body, subspace, rng)
        decomposition = self.shadow.shadow_faces(body, subspace, direction)
        L = self.shadow.decomposition_inertia(decomposition).L
        ratio = L * math.sqrt(d / n)
        radius = float(self.isotropy.radii(body, about_barycenter=not config.symmetric)["r"])
        sums = self.bernstein_face_sums(body, d)

        cross_check = None
        if config.cross_check_every and trial % config.cross_check_every == 0:
            oracle = self.isotropy.isotropy_constant(self.kernel.project(body, subspace))
            cross_check = abs(L - oracle) / oracle
            if cross_check > CROSS_CHECK_RTOL:
                logger.warning("trial %d: shadow and hull pipelines disagree by %.3g", trial, cross_check)

        elapsed = (time.perf_counter() - started) * 1000 if config.timing else 0.0
        logger.debug("trial %d: d=%d L=%.6f ratio=%.6f", trial, d, L, ratio)
        return ExperimentRecord(
            trial,
            trial_seed,
            n,
            d,
            config.m,
            L,
            ratio,
            radius,
            float(max(sums, key=float)) if sums else 0.0,
            elapsed,
            len(sums),
            cross_check,
        )

    def iter_trials(self, config: ExperimentConfig) -> Iterator[ExperimentRecord]:
        """Records in trial order; failed trials are logged and skipped."""
        lab = self._lab_for(config)
        for trial in range(config.total_trials):
            _, record, error = _outcome(lab, config, trial)
            if record is not None:
                yield record
            else:
                logger.warning("trial %d skipped: %s", trial, error)

    def run_projection_experiment(
        self, config: ExperimentConfig
    ) -> tuple[list[ExperimentRecord], ExperimentSummary]:
        """
        Run every trial of ``config`` and summarise the ratios L_{P_E K}·√(d/n).

        Trials with workers > 1 go to a process pool of that size, or to the injected
        executor; results are merged by trial id so the output does not depend on scheduling.
        """
        total = config.total_trials
        if config.workers > 1:
            props = config.to_dict()
            tolerances = [self.context.tolerance] * total
            executor = self.context.executor_for(config.workers)
            outcomes = list(executor.map(_run_trial, [props] * total, range(total), tolerances))
        else:
            lab = self._lab_for(config)
            outcomes = [_outcome(lab, config, trial) for trial in range(total)]
        outcomes.sort(key=lambda outcome: outcome[0])

        records = [record for _, record, _ in outcomes if record is not None]
        errors = [error for _, record, error in outcomes if record is None and error is not None]
        for error in errors:
            logger.warning("trial %d skipped: %s", error["trial"], error["message"])
        return records, self.summarize(config, records, errors)

    def _lab_for(self, config: ExperimentConfig) -> "LabOperations":
        if config.backend == self.backend.name:
            return self
        return _lab(config.backend, config.seed, self.context.tolerance)

    def summarize(
        self,
        config: ExperimentConfig,
        records: Sequence[ExperimentRecord],
        errors: Sequence[dict[str, Any]] = (),
    ) -> ExperimentSummary:
        by_dimension: list[DimensionSummary] = []
        for d in config.ds:
            rows = [r for r in records if r.d == d]
            by_dimension.append(
                {
                    "d": d,
                    "trials": config.trials,
                    "completed": len(rows),
                    "ratio": _quantiles([r.ratio for r in rows]),
                    "L": _quantiles([r.L for r in rows]),
                    "tail_counts": {f"ratio>{t}": sum(r.ratio > t for r in rows) for t in TAIL_THRESHOLDS},
                    "max_faces": max((r.faces for r in rows), default=0),
                    "union_bound": _union_bound(config, d),
                }
            )
        ratios = [r.ratio for r in records]
        max_ratio = max(ratios) if ratios else None
        pilot_bound = PILOT_RATIO_BOUND * (1 + PILOT_RATIO_SLACK)
        checks = [r.cross_check for r in records if r.cross_check is not None]
        out_of_range = config.m > config.n * math.exp(config.n / 2)
        return {
            "schema_version": EXPERIMENT_SCHEMA_VERSION,
            "config": config.to_dict(),
            "completed": len(records),
            "skipped": len(errors),
            "errors": list(errors),
            "by_dimension": by_dimension,
            "max_ratio": max_ratio,
            "pilot_bound": pilot_bound,
            "within_pilot": max_ratio is not None and max_ratio <= pilot_bound,
            "scaling_bound": SCALING_RATIO_BOUND,
            "within_scaling": max_ratio is not None and max_ratio <= SCALING_RATIO_BOUND,
            "cross_checks": len(checks),
            "max_cross_check_error": max(checks) if checks else None,
            "out_of_range_regime": out_of_range,
            "regime_note": (
                "m > n·e^{n/2}: the large-inradius regime is outside desk-scale experiments"
                if out_of_range
                else "desk-scale regime"
            ),
        }

    def write_csv(self, records: Sequence[ExperimentRecord], stream: IO[str]) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for record in records:
            writer.writerow(record.to_row())

    def inradius_event_frequency(
        self, n: int, m: int, trials: int, symmetric: bool = True, seed: Seed = None
    ) -> InradiusEvent:
        """Fraction of random bodies with r(K) ≥ (1/(2√2))·√(log(m/n)/n)."""
        validate_vertex_count(n, m)
        validate_trials(trials)
        threshold = math.sqrt(math.log(m / n) / n) / (2 * math.sqrt(2))
        rng = self.context.generator(seed)
        hits = 0
        for _ in range(trials):
            body = self._sphere_body(n, m, symmetric, rng)
            try:
                radius = float(self.isotropy.radii(body)["r"])
            except OriginOutside:
                continue
            hits += radius >= threshold
        frequency = hits / trials
        return {
            "threshold": threshold,
            "frequency": frequency,
            "trials": trials,
            "meets_target": frequency >= INRADIUS_EVENT_THRESHOLD,
        }

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
        """Frequency of max_F S_F > ε(d+1)·log(m/n) per ε over random sphere bodies."""
        validate_vertex_count(n, m)
        validate_trials(bodies)
        rng = self.context.generator(seed)
        maxima: list[float] = []
        max_faces = 0
        for _ in range(bodies):
            body = self._sphere_body(n, m, symmetric, rng)
            sums = self.bernstein_face_sums(body, d)
            max_faces = max(max_faces, len(sums))
            maxima.append(float(max(sums, key=float)) if sums else 0.0)
        scale = (d + 1) * math.log(m / n)
        ordered = sorted(epsilons)
        frequencies = [sum(value > eps * scale for value in maxima) / bodies for eps in ordered]
        return {
            "epsilons": list(ordered),
            "frequencies": frequencies,
            "monotone": all(a >= b for a, b in zip(frequencies, frequencies[1:])),
            "max_faces": max_faces,
            "union_bound": int(comb(2 * m if symmetric else m + 1, d + 1, exact=True)),
        }


def _union_bound(config: ExperimentConfig, d: int) -> int:
    if config.kind == "sphere":
        vertices = 2 * config.m if config.symmetric else config.m + 1
    else:
        vertices = config.m
    return int(comb(vertices, d + 1, exact=True))


def _quantiles(values: Sequence[float]) -> Quantiles:
    if not values:
        return {"min": math.nan, "median": math.nan, "q90": math.nan, "max": math.nan}
    data = np.asarray(values, dtype=float)
    return {
        "min": float(data.min()),
        "median": float(np.median(data)),
        "q90": float(np.quantile(data, 0.9)),
        "max": float(data.max()),
    }


def _outcome(lab: LabOperations, config: ExperimentConfig, trial: int) -> TrialOutcome:
    try:
        return trial, lab.run_trial(config, trial), None
    except PolyshadowError as exc:
        return trial, None, {"trial": trial, "category": exc.category, "message": str(exc)}


@lru_cache(maxsize=4)
def _lab(backend: str, seed: int, tolerance: float) -> LabOperations:
    context = Context(backend=backend, tolerance=tolerance, seed=seed)
    kernel = KernelOperations(context)
    cones = ConeOperations(context, kernel)
    isotropy = IsotropyOperations(context, kernel)
    shadow = ShadowOperations(context, kernel, cones, isotropy)
    return LabOperations(context, kernel, cones, shadow, isotropy)


def _run_trial(props: dict[str, Any], trial: int, tolerance: float) -> TrialOutcome:
    """Process-pool entry point."""
    config = ExperimentConfig.load(props)
    return _outcome(_lab(config.backend, config.seed, tolerance), config, trial)

