from __future__ import annotations

from collections.abc import Mapping, Sequence
from typing import Any, Literal, NotRequired, Optional, TypedDict, Union

from polyshadow.geometry.constants import (
    CSV_COLUMNS,
    DEFAULT_CROSS_CHECK_EVERY,
    DEFAULT_TRIALS,
    EXPERIMENT_KINDS,
)
from polyshadow.geometry.kernel.scalar import Backend
from polyshadow.geometry.utils import (
    validate_kind,
    validate_subspace_dim,
    validate_trials,
    validate_vertex_count,
)

from .shared import GeometryObject


class ExperimentConfigProps(TypedDict):
    """ExperimentConfig JSON shape."""

    object: NotRequired[Literal["experiment_config"]]
    n: int
    d: Union[int, list[int]]
    m: NotRequired[Optional[int]]
    kind: NotRequired[str]
    symmetric: NotRequired[bool]
    trials: NotRequired[int]
    seed: NotRequired[int]
    backend: NotRequired[str]
    output: NotRequired[Optional[str]]
    workers: NotRequired[int]
    timing: NotRequired[bool]
    cross_check_every: NotRequired[int]


class ExperimentConfig(GeometryObject):
    """
    Parameters of a projection experiment.

    ``kind`` selects the body: "b1" (B₁ⁿ), "simplex" (Δₙ ⊂ ℝ^{n+1}) or "sphere"
    (hull of m random unit vectors, symmetrised when ``symmetric``). For "b1" and
    "simplex" the vertex count m is implied by n.
    """

    _object = "experiment_config"

    def __init__(
        self,
        n: int,
        d: Union[int, Sequence[int]],
        m: Optional[int] = None,
        kind: str = "b1",
        symmetric: bool = True,
        trials: int = DEFAULT_TRIALS,
        seed: int = 0,
        backend: str = "float",
        output: Optional[str] = None,
        workers: int = 1,
        timing: bool = False,
        cross_check_every: int = DEFAULT_CROSS_CHECK_EVERY,
    ) -> None:
        self.kind = validate_kind(kind, EXPERIMENT_KINDS)
        self.n = n
        self.ds: tuple[int, ...] = (d,) if isinstance(d, int) else tuple(d)
        if not self.ds:
            raise ValueError("at least one subspace dimension is required")
        for value in self.ds:
            validate_subspace_dim(n, value)
        if kind == "b1":
            m = 2 * n
            symmetric = True
        elif kind == "simplex":
            m = n + 1
            symmetric = False
        elif m is None:
            m = 2 * n
        if kind == "sphere":
            validate_vertex_count(n, m)
        self.m: int = m
        self.symmetric = symmetric
        self.trials = validate_trials(trials)
        if seed < 0 or seed >= 2**64:
            raise ValueError("seed must be a 64-bit non-negative integer")
        self.seed = seed
        if backend not in {"exact", "float"}:
            raise ValueError("backend must be either 'exact' or 'float'")
        self.backend = backend
        self.output = output
        if workers < 1:
            raise ValueError("workers must be at least 1")
        self.workers = workers
        self.timing = timing
        if cross_check_every < 0:
            raise ValueError("cross_check_every cannot be negative")
        self.cross_check_every = cross_check_every

    @property
    def total_trials(self) -> int:
        return self.trials * len(self.ds)

    def trial_dim(self, trial: int) -> int:
        """Trials run through the d-list in blocks of ``trials``."""
        return self.ds[trial // self.trials]

    @classmethod
    def load(cls, props: Mapping[str, Any], backend: Optional[Backend] = None) -> "ExperimentConfig":
        fields = {key: value for key, value in props.items() if key != "object"}
        return cls(**fields)

    def to_dict(self) -> dict[str, Any]:
        return {
            "object": "experiment_config",
            "n": self.n,
            "d": list(self.ds) if len(self.ds) > 1 else self.ds[0],
            "m": self.m,
            "kind": self.kind,
            "symmetric": self.symmetric,
            "trials": self.trials,
            "seed": self.seed,
            "backend": self.backend,
            "output": self.output,
            "workers": self.workers,
            "timing": self.timing,
            "cross_check_every": self.cross_check_every,
        }

    def __repr__(self) -> str:
        return f"<ExperimentConfig kind={self.kind} n={self.n} d={list(self.ds)} trials={self.trials}>"


class ExperimentRecord(GeometryObject):
    """One row of the experiment CSV."""

    _object = "experiment_record"

    def __init__(
        self,
        trial: int,
        seed: int,
        n: int,
        d: int,
        m: int,
        L: float,
        ratio: float,
        r: float,
        max_bernstein: float,
        ms: float = 0.0,
        faces: int = 0,
        cross_check: Optional[float] = None,
    ) -> None:
        self.trial = trial
        self.seed = seed
        self.n = n
        self.d = d
        self.m = m
        self.L = L
        self.ratio = ratio
        self.r = r
        self.max_bernstein = max_bernstein
        self.ms = ms
        self.faces = faces
        self.cross_check = cross_check

    def to_row(self) -> list[str]:
        values = {
            "trial": self.trial,
            "seed": self.seed,
            "n": self.n,
            "d": self.d,
            "m": self.m,
            "L": self.L,
            "ratio": self.ratio,
            "r": self.r,
            "max_bernstein": self.max_bernstein,
            "ms": self.ms,
        }
        return [_format(values[column]) for column in CSV_COLUMNS]

    @classmethod
    def load(cls, props: Mapping[str, Any], backend: Optional[Backend] = None) -> "ExperimentRecord":
        fields = {key: value for key, value in props.items() if key != "object"}
        return cls(**fields)

    def to_dict(self) -> dict[str, Any]:
        return {
            "object": "experiment_record",
            "trial": self.trial,
            "seed": self.seed,
            "n": self.n,
            "d": self.d,
            "m": self.m,
            "L": self.L,
            "ratio": self.ratio,
            "r": self.r,
            "max_bernstein": self.max_bernstein,
            "ms": self.ms,
            "faces": self.faces,
            "cross_check": self.cross_check,
        }

    def __repr__(self) -> str:
        return f"<ExperimentRecord trial={self.trial} d={self.d} ratio={self.ratio:.6f}>"


def _format(value: Union[int, float]) -> str:
    if isinstance(value, int):
        return str(value)
    return repr(float(value))
