from __future__ import annotations

from collections.abc import Mapping, Sequence
from typing import Any, Literal, NotRequired, TypedDict

from polyshadow.geometry.exceptions import DimensionMismatch, PolyshadowValidationError
from polyshadow.geometry.kernel.linalg import (
    Matrix,
    Vector,
    dot,
    identity,
    matmul,
    matvec,
    outer,
    scale,
    zeros,
)
from polyshadow.geometry.kernel.scalar import Backend, Scalar

from .shared import (
    GeometryObject,
    JSONScalar,
    decode_matrix,
    decode_scalar,
    decode_vector,
    encode_matrix,
    encode_scalar,
    encode_vector,
)


class QuadraticFormProps(TypedDict):
    """Inline JSON shape accepted by ``--f``."""

    object: NotRequired[Literal["quadratic_form"]]
    c: JSONScalar
    b: NotRequired[list[JSONScalar]]
    A: NotRequired[list[list[JSONScalar]]]


class QuadraticForm(GeometryObject):
    """f(x) = c + ⟨b, x⟩ + xᵀ A x with A symmetric."""

    _object = "quadratic_form"

    def __init__(
        self,
        constant: Scalar,
        linear: Sequence[Scalar],
        quadratic: Sequence[Sequence[Scalar]],
        backend: Backend,
    ) -> None:
        n = len(linear)
        if len(quadratic) != n or any(len(row) != n for row in quadratic):
            raise DimensionMismatch(
                "quadratic part must be an n×n matrix matching the linear part",
                {"n": n, "rows": len(quadratic)},
            )
        magnitude = max((abs(float(x)) for row in quadratic for x in row), default=1.0)
        for i in range(n):
            for j in range(i + 1, n):
                if not backend.is_zero(quadratic[i][j] - quadratic[j][i], magnitude):
                    raise PolyshadowValidationError(
                        "quadratic part must be symmetric", {"row": i, "col": j}
                    )
        self.constant = constant
        self.linear: Vector = tuple(linear)
        self.quadratic: Matrix = [list(row) for row in quadratic]
        self.backend = backend

    @property
    def ambient_dim(self) -> int:
        return len(self.linear)

    @classmethod
    def norm2(cls, n: int, backend: Backend) -> "QuadraticForm":
        """|x|²."""
        return cls(backend.coerce(0), zeros(n, backend), identity(n, backend), backend)

    @classmethod
    def const(cls, n: int, backend: Backend, value: Any = 1) -> "QuadraticForm":
        zero = backend.coerce(0)
        return cls(backend.coerce(value), zeros(n, backend), [[zero] * n for _ in range(n)], backend)

    @classmethod
    def along(cls, theta: Sequence[Scalar], backend: Backend) -> "QuadraticForm":
        """⟨x, θ⟩² / |θ|², i.e. the squared coordinate along the unit vector θ/|θ|."""
        size = dot(theta, theta)
        n = len(theta)
        return cls(backend.coerce(0), zeros(n, backend), outer(theta, scale(theta, 1 / size)), backend)

    @classmethod
    def mixed(
        cls, theta: Sequence[Scalar], nu: Sequence[Scalar], backend: Backend
    ) -> "QuadraticForm":
        """⟨x, θ⟩⟨x, ν⟩ (symmetrised)."""
        half = backend.coerce("1/2")
        a = outer(theta, nu)
        symmetric = [[half * (a[i][j] + a[j][i]) for j in range(len(nu))] for i in range(len(nu))]
        return cls(backend.coerce(0), zeros(len(nu), backend), symmetric, backend)

    @classmethod
    def load(cls, props: Mapping[str, Any], backend: Backend) -> "QuadraticForm":
        if "A" in props:
            quadratic = decode_matrix(props["A"], backend)
            n = len(quadratic)
        elif "b" in props:
            n = len(props["b"])
            quadratic = [[backend.coerce(0)] * n for _ in range(n)]
        else:
            raise PolyshadowValidationError(
                "quadratic form needs at least one of 'b' or 'A'", {"keys": sorted(props)}
            )
        linear = decode_vector(props["b"], backend) if "b" in props else zeros(n, backend)
        return cls(decode_scalar(props.get("c", 0), backend), linear, quadratic, backend)

    def to_dict(self) -> dict[str, Any]:
        return {
            "object": "quadratic_form",
            "c": encode_scalar(self.constant),
            "b": encode_vector(self.linear),
            "A": encode_matrix(self.quadratic),
        }

    def __call__(self, x: Sequence[Scalar]) -> Scalar:
        return self.constant + dot(self.linear, x) + dot(x, matvec(self.quadratic, x))

    def compose(self, linear_map: Sequence[Sequence[Scalar]]) -> "QuadraticForm":
        """f ∘ P for a symmetric linear map P (e.g. an orthogonal projection)."""
        return QuadraticForm(
            self.constant,
            matvec(linear_map, self.linear),
            matmul(matmul(linear_map, self.quadratic), linear_map),
            self.backend,
        )

    def __repr__(self) -> str:
        return f"<QuadraticForm n={self.ambient_dim}>"
