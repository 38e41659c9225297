from __future__ import annotations

from fractions import Fraction

import pytest
import sympy

from polyshadow.geometry.kernel.scalar import (
    decode_scalar,
    encode_scalar,
    make_backend,
    measure_difference,
    measure_quotient,
    measures_equal,
    scale_measure,
    surd_parts,
)


def test_exact_backend_parses_rational_strings_and_floats() -> None:
    backend = make_backend("exact")

    assert backend.coerce("3/4") == Fraction(3, 4)
    assert backend.coerce(0.5) == Fraction(1, 2)
    assert backend.coerce(sympy.Rational(2, 7)) == Fraction(2, 7)


def test_exact_backend_rejects_booleans_and_non_finite_values() -> None:
    backend = make_backend("exact")

    with pytest.raises(TypeError):
        backend.coerce(True)

    with pytest.raises(ValueError):
        backend.coerce(float("inf"))


def test_exact_square_roots_stay_rational_when_possible() -> None:
    backend = make_backend("exact")

    assert backend.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert backend.sqrt(2) == sympy.sqrt(2)


def test_float_comparisons_use_relative_tolerance() -> None:
    backend = make_backend("float", 1e-6)

    assert backend.equal(1000.0, 1000.0005)
    assert not backend.equal(1.0, 1.01)
    assert backend.sign(1e-9) == 0
    assert backend.sqrt(-1e-9) == 0.0


def test_unknown_backend_name_is_rejected() -> None:
    with pytest.raises(ValueError):
        make_backend("decimal")


@pytest.mark.parametrize(
    ("value", "encoded"),
    [
        (Fraction(1, 3), "1/3"),
        (sympy.sqrt(2) / 2, "sqrt(2)/2"),
        (sympy.Rational(4, 2), 2),
        (Fraction(6, 3), 2),
        (0.25, 0.25),
        (3, 3),
    ],
)
def test_encode_scalar(value: object, encoded: object) -> None:
    assert encode_scalar(value) == encoded


def test_decode_scalar_accepts_symbolic_strings_in_float_mode() -> None:
    assert decode_scalar("sqrt(2)", make_backend("float")) == pytest.approx(2**0.5)
    assert decode_scalar("5/2", make_backend("exact")) == Fraction(5, 2)


def test_exact_sqrt_of_a_large_semiprime_is_not_factored() -> None:
    radicand = (2**127 - 1) * (2**89 - 1)

    root = make_backend("exact").sqrt(Fraction(radicand, 7))

    assert surd_parts(root) == (1, Fraction(radicand, 7))
    assert float(root) == pytest.approx((radicand / 7) ** 0.5)


def test_scale_measure_keeps_one_radicand() -> None:
    backend = make_backend("exact")
    root = backend.sqrt(Fraction(3, 2))

    scaled = scale_measure(Fraction(4, 5), root)

    assert surd_parts(scaled) == (Fraction(4, 5), Fraction(3, 2))
    assert scale_measure(Fraction(2), backend.sqrt(1)) == 2
    assert scale_measure(Fraction(0), root) == 0


def test_surd_comparisons_square_both_sides() -> None:
    backend = make_backend("exact")
    root_eight = backend.sqrt(8)
    twice_root_two = scale_measure(Fraction(2), backend.sqrt(2))

    assert measures_equal(root_eight, twice_root_two)
    assert not measures_equal(root_eight, scale_measure(Fraction(-2), backend.sqrt(2)))
    assert backend.equal(root_eight, twice_root_two)
    assert measure_difference(root_eight, twice_root_two) == 0
    assert measure_difference(twice_root_two, backend.sqrt(2)) == backend.sqrt(2)
    assert measure_quotient(root_eight, backend.sqrt(2), backend) == 2
    assert measure_difference(backend.sqrt(3), backend.sqrt(2)) == pytest.approx(3**0.5 - 2**0.5)


def test_surd_parts_rejects_other_expressions() -> None:
    with pytest.raises(TypeError):
        surd_parts(sympy.Symbol("x"))
