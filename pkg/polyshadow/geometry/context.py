from concurrent.futures import Executor, ProcessPoolExecutor
from typing import Any, Optional, Union

import numpy as np

from polyshadow.geometry.kernel.scalar import DEFAULT_TOLERANCE, Backend, make_backend

DEFAULT_BACKEND = "float"
DEFAULT_DIRECTION_RETRIES = 64
DEFAULT_WORKERS = 1
DEFAULT_SEED = 0

Seed = Union[int, np.random.Generator, None]


class Context:
    """
    Computation context shared by every operation group.

    Holds the scalar backend, the tolerance, retry budgets and the master seed. Can be
    used as a context manager to shut down a process pool it created for experiments.
    """

    def __init__(
        self,
        backend: str = DEFAULT_BACKEND,
        tolerance: float = DEFAULT_TOLERANCE,
        max_direction_retries: int = DEFAULT_DIRECTION_RETRIES,
        workers: int = DEFAULT_WORKERS,
        seed: int = DEFAULT_SEED,
        executor: Optional[Executor] = None,
    ) -> None:
        """
        Initialize a new computation context.

        Args:
            backend: 'exact' for rational arithmetic or 'float' for binary floating point.
            tolerance: Relative tolerance τ used by float comparisons.
            max_direction_retries: Attempts allowed when sampling a generic direction.
            workers: Worker processes used by experiments.
            seed: Master seed; every random stream is derived from it.
            executor: Optional pre-configured executor for experiment trials.

        Raises:
            ValueError: If backend is unknown, tolerance is not positive, retries are
                        less than 1, workers is less than 1 or seed is negative
        """
        if backend not in {"exact", "float"}:
            raise ValueError("backend must be either 'exact' or 'float'")
        if tolerance <= 0:
            raise ValueError("tolerance must be greater than 0")
        if max_direction_retries < 1:
            raise ValueError("max_direction_retries must be at least 1")
        if workers < 1:
            raise ValueError("workers must be at least 1")
        if seed < 0:
            raise ValueError("seed cannot be negative")

        self.backend: Backend = make_backend(backend, tolerance)
        self.tolerance: float = tolerance
        self.max_direction_retries: int = max_direction_retries
        self.workers: int = workers
        self.seed: int = seed
        self._owns_executor = executor is None
        self._executor: Optional[Executor] = executor
        self._pool_size = 0

    @property
    def exact(self) -> bool:
        return self.backend.exact

    @property
    def executor(self) -> Executor:
        """Process pool for experiment trials, created on first use."""
        return self.executor_for(self.workers)

    def executor_for(self, workers: int) -> Executor:
        """
        The injected executor, or an owned process pool with at least ``workers`` processes.
        A smaller owned pool is shut down and replaced.
        """
        if not self._owns_executor:
            return self._executor  # type: ignore[return-value]
        if self._executor is not None and self._pool_size < workers:
            self._executor.shutdown()
            self._executor = None
        if self._executor is None:
            self._executor = ProcessPoolExecutor(max_workers=workers)
            self._pool_size = workers
        return self._executor

    def rng(self, *keys: int) -> np.random.Generator:
        """Independent generator for the stream (seed, *keys)."""
        return np.random.default_rng(np.random.SeedSequence([self.seed, *keys]))

    def generator(self, seed: Seed = None) -> np.random.Generator:
        """Generator for an explicit seed, or the master stream when ``seed`` is None."""
        if seed is None:
            return self.rng()
        return np.random.default_rng(seed)

    def __enter__(self) -> "Context":
        """Enter the context manager."""
        return self

    def __exit__(self, exc_type: Optional[type], exc_val: Optional[Exception], exc_tb: Optional[Any]) -> None:
        """Exit the context manager and clean up resources."""
        self.close()

    def close(self) -> None:
        """Shut down the executor if this context created it."""
        if self._owns_executor and self._executor is not None:
            self._executor.shutdown()
            self._executor = None
            self._pool_size = 0

    def __repr__(self) -> str:
        return f"<Context backend={self.backend.name} tolerance={self.tolerance!r} seed={self.seed}>"
