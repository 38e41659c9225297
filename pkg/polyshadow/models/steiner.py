from __future__ import annotations

from typing import Any

from polyshadow.geometry.kernel.linalg import Vector
from polyshadow.geometry.kernel.scalar import Measure, Scalar

from .polytope import Polytope
from .shared import GeometryObject, encode_scalar, encode_vector


class SteinerResult(GeometryObject):
    """
    Steiner symmetral S(K) of K with respect to the hyperplane ν⊥.

    ``sigma_squared`` = det cov S(K) / det cov K is exact in exact mode; ``sigma`` is its
    square root as a float, so that L_out = sigma^{1/n} · L_in.
    """

    _object = "steiner_result"

    def __init__(
        self,
        input: Polytope,
        direction: Vector,
        output: Polytope,
        sigma_squared: Scalar,
        sigma: float,
        L_in: float,
        L_out: float,
        volume_in: Measure,
        volume_out: Measure,
    ) -> None:
        self.input = input
        self.direction = tuple(direction)
        self.output = output
        self.sigma_squared = sigma_squared
        self.sigma = sigma
        self.L_in = L_in
        self.L_out = L_out
        self.volume_in = volume_in
        self.volume_out = volume_out

    @property
    def n(self) -> int:
        return self.input.ambient_dim

    @property
    def identity_residual(self) -> float:
        """|L_out − σ^{1/n} L_in|."""
        return abs(self.L_out - self.sigma ** (1 / self.n) * self.L_in)

    def to_dict(self) -> dict[str, Any]:
        return {
            "object": "steiner_result",
            "input": self.input.to_dict(),
            "direction": encode_vector(self.direction),
            "output": self.output.to_dict(),
            "sigma_squared": encode_scalar(self.sigma_squared),
            "sigma": self.sigma,
            "L_in": self.L_in,
            "L_out": self.L_out,
            "volume_in": encode_scalar(self.volume_in),
            "volume_out": encode_scalar(self.volume_out),
            "identity_residual": self.identity_residual,
        }

    def __repr__(self) -> str:
        return f"<SteinerResult n={self.n} sigma={self.sigma:.6f}>"
