"""
Scalar backends.

Every geometric routine is written once against the small `Backend` interface below.
The exact backend works over `fractions.Fraction`; the float backend works over Python
floats and compares with a relative tolerance.
"""

import math
from fractions import Fraction
from numbers import Real
from typing import Any, Union

import numpy as np
import sympy

Scalar = Union[Fraction, float]
Measure = Union[Fraction, float, sympy.Expr]

DEFAULT_TOLERANCE = 1e-9


class Backend:
    """Arithmetic policy shared by all kernels."""

    name = "abstract"
    exact = False

    def __init__(self, tolerance: float = DEFAULT_TOLERANCE) -> None:
        if not tolerance > 0:
            raise ValueError("tolerance must be greater than 0")
        self.tolerance = tolerance

    def coerce(self, value: Any) -> Scalar:
        raise NotImplementedError

    def is_zero(self, value: Scalar, scale: float = 1.0) -> bool:
        raise NotImplementedError

    def sqrt(self, value: Scalar) -> Measure:
        raise NotImplementedError

    def sign(self, value: Scalar, scale: float = 1.0) -> int:
        if self.is_zero(value, scale):
            return 0
        return 1 if value > 0 else -1

    def equal(self, a: Measure, b: Measure) -> bool:
        if self.exact:
            return measures_equal(a, b) if _is_symbolic(a, b) else a == b
        return abs(float(a) - float(b)) <= self.tolerance * max(1.0, abs(float(a)), abs(float(b)))

    def vector(self, values: Any) -> tuple[Scalar, ...]:
        return tuple(self.coerce(value) for value in values)

    def matrix(self, rows: Any) -> list[list[Scalar]]:
        return [list(self.vector(row)) for row in rows]

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__} tolerance={self.tolerance!r}>"


class ExactBackend(Backend):
    """Rational arithmetic; predicates have no rounding."""

    name = "exact"
    exact = True

    def coerce(self, value: Any) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(value, (int, np.integer)):
            return Fraction(int(value))
        if isinstance(value, str):
            return Fraction(value.strip())
        if isinstance(value, sympy.Rational):
            return Fraction(int(value.p), int(value.q))
        if isinstance(value, (float, np.floating)):
            if not math.isfinite(float(value)):
                raise ValueError(f"non-finite scalar: {value!r}")
            return Fraction(repr(float(value)))
        if isinstance(value, Real):
            return Fraction(value)  # type: ignore[arg-type]
        raise TypeError(f"cannot convert {type(value).__name__} to an exact scalar")

    def is_zero(self, value: Scalar, scale: float = 1.0) -> bool:
        return value == 0

    def sqrt(self, value: Scalar) -> Measure:
        value = self.coerce(value)
        if value < 0:
            raise ValueError("square root of a negative scalar")
        root_num = math.isqrt(value.numerator)
        root_den = math.isqrt(value.denominator)
        if root_num * root_num == value.numerator and root_den * root_den == value.denominator:
            return Fraction(root_num, root_den)
        return _root(value)


class FloatBackend(Backend):
    """Binary floating point with tolerance-based comparisons."""

    name = "float"
    exact = False

    def coerce(self, value: Any) -> float:
        if isinstance(value, str):
            return float(Fraction(value.strip()))
        result = float(value)
        if not math.isfinite(result):
            raise ValueError(f"non-finite scalar: {value!r}")
        return result

    def is_zero(self, value: Scalar, scale: float = 1.0) -> bool:
        return abs(value) <= self.tolerance * max(1.0, abs(scale))

    def sqrt(self, value: Scalar) -> float:
        value = float(value)
        if value < 0:
            if -value <= self.tolerance:
                return 0.0
            raise ValueError("square root of a negative scalar")
        return math.sqrt(value)


def make_backend(name: str, tolerance: float = DEFAULT_TOLERANCE) -> Backend:
    """Return the backend registered under ``name``."""

    backends: dict[str, type[Backend]] = {
        "exact": ExactBackend,
        "float": FloatBackend,
    }
    if name not in backends:
        raise ValueError("backend must be either 'exact' or 'float'")
    return backends[name](tolerance)


def _is_symbolic(*values: Any) -> bool:
    return any(isinstance(value, sympy.Basic) for value in values)


def _rational(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _root(value: Fraction) -> sympy.Expr:
    # evaluate=False keeps sympy from factoring the radicand
    return sympy.Pow(_rational(value), sympy.S.Half, evaluate=False)


def surd_parts(value: Measure) -> tuple[Fraction, Fraction]:
    """
    Split an exact measure into (c, g) with value = c·√g.

    Raises:
        TypeError: If the value is not a rational multiple of a rational square root.
    """
    if isinstance(value, Fraction):
        return value, Fraction(1)
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return Fraction(int(value)), Fraction(1)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q)), Fraction(1)
    if isinstance(value, sympy.Pow) and value.exp == sympy.S.Half and isinstance(value.base, sympy.Rational):
        return Fraction(1), Fraction(int(value.base.p), int(value.base.q))
    if isinstance(value, sympy.Mul):
        coefficient, radicand = Fraction(1), Fraction(1)
        for arg in value.args:
            c, g = surd_parts(arg)
            coefficient, radicand = coefficient * c, radicand * g
        return coefficient, radicand
    raise TypeError(f"not a surd: {value!r}")


def scale_measure(value: Scalar, factor: Measure) -> Measure:
    """value · factor, leaving value untouched when the factor is exactly 1."""
    if isinstance(factor, sympy.Basic) and not isinstance(factor, sympy.Rational):
        c, g = surd_parts(factor)
        coefficient = Fraction(value) * c
        root = ExactBackend().sqrt(g)
        if coefficient == 0 or isinstance(root, Fraction):
            return coefficient * root
        if coefficient == 1:
            return root
        return sympy.Mul(_rational(coefficient), root, evaluate=False)
    if factor == 1:
        return value
    return value * factor


def measures_equal(a: Measure, b: Measure) -> bool:
    """Exact equality of c₁√g₁ and c₂√g₂ through c₁²g₁ = c₂²g₂ with matching signs."""
    c1, g1 = surd_parts(a)
    c2, g2 = surd_parts(b)
    return _sign(c1) == _sign(c2) and c1 * c1 * g1 == c2 * c2 * g2


def measure_difference(a: Measure, b: Measure) -> Measure:
    """a − b, exact whenever both share a radicand or coincide; a float otherwise."""
    if not _is_symbolic(a, b):
        return a - b
    c1, g1 = surd_parts(a)
    c2, g2 = surd_parts(b)
    if measures_equal(a, b):
        return Fraction(0)
    if g1 == g2:
        return scale_measure(c1 - c2, _root(g1))
    return float(a) - float(b)


def measure_quotient(a: Measure, b: Measure, backend: Backend) -> Measure:
    """a / b, folding both radicands into one root."""
    if not _is_symbolic(a, b):
        return a / b
    c1, g1 = surd_parts(a)
    c2, g2 = surd_parts(b)
    return scale_measure(c1 / c2, backend.sqrt(g1 / g2))


def to_float(value: Measure) -> float:
    return float(value)


def encode_scalar(value: Measure) -> Union[str, float, int]:
    """JSON encoding: integers as numbers, rationals as "p/q" strings, surds as sympy strings."""

    if isinstance(value, sympy.Rational):
        value = Fraction(int(value.p), int(value.q))
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    if isinstance(value, sympy.Basic):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    return float(value)


def decode_scalar(value: Any, backend: Backend) -> Scalar:
    if isinstance(value, str) and not _is_plain_number(value):
        return backend.coerce(float(sympy.sympify(value, evaluate=False)))
    return backend.coerce(value)


def _is_plain_number(text: str) -> bool:
    try:
        Fraction(text.strip())
    except ValueError:
        return False
    return True


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)
