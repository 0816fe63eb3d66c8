"""Tests for dimensional algebra and the unit-expression parser."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.errors import DimensionError, DomainError, UnitParseError
from app.quantity import (
    CHARGE,
    DIMENSIONLESS,
    ELECTRIC_FIELD,
    ETA,
    LENGTH,
    NATURAL_QUANTITIES,
    Dimension,
    Quantity,
    check_equation_dims,
    dim_mul,
    dim_pow,
    format_dimension,
    natural_reduce,
    parse_length,
    parse_unit_expr,
    quantity,
)

exponents = st.fractions(min_value=-6, max_value=6, max_denominator=6)
dimensions = st.builds(Dimension, exponents, exponents, exponents, exponents)


# ---------------------------------------------------------------------------
# algebraic laws
# ---------------------------------------------------------------------------


@given(dimensions, dimensions)
def test_dim_mul_is_commutative(a: Dimension, b: Dimension):
    assert dim_mul(a, b) == dim_mul(b, a)


@given(dimensions, dimensions, dimensions)
def test_dim_mul_is_associative(a: Dimension, b: Dimension, c: Dimension):
    assert dim_mul(dim_mul(a, b), c) == dim_mul(a, dim_mul(b, c))


@given(dimensions)
def test_dimensionless_is_the_identity(a: Dimension):
    assert dim_mul(a, DIMENSIONLESS) == a
    assert dim_mul(a, dim_pow(a, -1)) == DIMENSIONLESS


@given(dimensions, dimensions, exponents)
def test_dim_pow_distributes_over_mul(a: Dimension, b: Dimension, p: Fraction):
    assert dim_pow(dim_mul(a, b), p) == dim_mul(dim_pow(a, p), dim_pow(b, p))


@given(dimensions, exponents, exponents)
def test_dim_pow_composes(a: Dimension, p: Fraction, q: Fraction):
    assert dim_pow(dim_pow(a, p), q) == dim_pow(a, p * q)


@given(dimensions)
def test_natural_reduce_is_idempotent(a: Dimension):
    once = natural_reduce(a)
    assert natural_reduce(once) == once
    assert once.current == 0


@given(dimensions, dimensions)
def test_natural_reduce_is_a_homomorphism(a: Dimension, b: Dimension):
    assert natural_reduce(a * b) == natural_reduce(a) * natural_reduce(b)


@given(dimensions)
def test_format_then_parse_is_a_fixed_point(a: Dimension):
    text = format_dimension(a)
    assert parse_unit_expr(text).dim == a
    assert format_dimension(parse_unit_expr(text).dim) == text


# ---------------------------------------------------------------------------
# Dimension and format_dimension
# ---------------------------------------------------------------------------


def test_dimension_coerces_to_fractions():
    d = Dimension(1, "1/2", 0, -3)
    assert d.exponents == (Fraction(1), Fraction(1, 2), Fraction(0), Fraction(-3))


def test_format_dimension_orders_base_units():
    assert format_dimension(Dimension(length=-3, mass=1, time=-2)) == "m^-3 kg s^-2"
    assert format_dimension(Dimension(length=Fraction(-1, 2))) == "m^-1/2"
    assert format_dimension(DIMENSIONLESS) == "1"
    assert str(LENGTH) == "m"


def test_natural_reduce_replaces_ampere():
    assert natural_reduce(Dimension(current=1)) == Dimension(mass=1, time=-3)


def test_charge_and_eta_share_a_dimension():
    """C m^-3 and N m^-4 coincide once the ampere is eliminated."""
    assert natural_reduce(parse_unit_expr("C m^-3").dim) == natural_reduce(ETA)
    assert CHARGE == natural_reduce(parse_unit_expr("J m^-2").dim)


def test_natural_quantities_parse():
    for row in NATURAL_QUANTITIES:
        parse_unit_expr(row.units)
    rows = {row.name: row for row in NATURAL_QUANTITIES}
    assert natural_reduce(parse_unit_expr(rows["Charge"].units).dim) == CHARGE
    assert parse_unit_expr(rows["Electric field"].units).dim == ELECTRIC_FIELD
    assert natural_reduce(parse_unit_expr(rows["Ampere"].units).dim) == natural_reduce(Dimension(current=1))


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("N", Dimension(length=1, mass=1, time=-2)),
        ("N m^-3", Dimension(length=-2, mass=1, time=-2)),
        ("J/s", Dimension(length=2, mass=1, time=-3)),
        ("m s⁻¹", Dimension(length=1, time=-1)),
        ("N·m", Dimension(length=2, mass=1, time=-2)),
        ("kg*m^2", Dimension(length=2, mass=1)),
        ("m^(1/2)", Dimension(length=Fraction(1, 2))),
        ("(m s^-1)^2", Dimension(length=2, time=-2)),
        ("1", DIMENSIONLESS),
        ("1/s", Dimension(time=-1)),
        ("Hz", Dimension(time=-1)),
        ("C", Dimension(time=1, current=1)),
    ],
)
def test_parse_unit_expr_dimensions(text: str, expected: Dimension):
    assert parse_unit_expr(text).dim == expected


def test_parse_unit_expr_scales():
    assert parse_unit_expr("fm").magnitude == pytest.approx(1e-15)
    assert parse_unit_expr("eV").magnitude == pytest.approx(1.602176634e-19)
    assert parse_unit_expr("fm^2").magnitude == pytest.approx(1e-30)
    assert parse_unit_expr("m/nm").magnitude == pytest.approx(1e9)


def test_division_binds_to_the_next_factor():
    assert parse_unit_expr("J/s m").dim == parse_unit_expr("J m s^-1").dim


@pytest.mark.parametrize(
    ("text", "message", "position"),
    [
        ("", "empty unit expression", 0),
        ("kg furlong", "unknown unit 'furlong'", 3),
        ("2 m", "numeric factor '2'", 0),
        ("m^", "malformed exponent", 2),
        ("m^1/0", "zero denominator", 4),
        ("J/(m s)", "division by a parenthesized group", 2),
        ("m )", "unexpected ')'", 2),
        ("m $", "unexpected character '$'", 2),
        ("(m", "expected ')'", 2),
    ],
)
def test_parse_unit_expr_errors(text: str, message: str, position: int):
    with pytest.raises(UnitParseError) as excinfo:
        parse_unit_expr(text)

    assert message in str(excinfo.value)
    assert excinfo.value.position == position
    assert excinfo.value.text == text


def test_unit_parse_error_is_a_value_error():
    with pytest.raises(ValueError):
        parse_unit_expr("parsec")


def test_unit_parse_error_renders_caret():
    with pytest.raises(UnitParseError) as excinfo:
        parse_unit_expr("kg furlong")
    assert str(excinfo.value).endswith("kg furlong\n     ^")


# ---------------------------------------------------------------------------
# Quantity
# ---------------------------------------------------------------------------


def test_quantity_arithmetic_tracks_dimensions():
    force = quantity(2.0, "N")
    length = quantity(3.0, "m")

    work = force * length
    assert work.magnitude == 6.0
    assert work.dim == parse_unit_expr("J").dim
    assert (work / length).dim == force.dim
    assert (2 * length).magnitude == 6.0
    assert (1 / length).dim == Dimension(length=-1)


def test_quantity_power_accepts_fractions():
    area = quantity(4.0, "m^2")
    side = area ** Fraction(1, 2)
    assert side.magnitude == pytest.approx(2.0)
    assert side.dim == LENGTH


def test_quantity_addition_requires_equal_dimensions():
    energy = quantity(1.0, "J") + quantity(1.0, "eV")
    assert energy.magnitude == pytest.approx(1.0 + 1.602176634e-19)

    with pytest.raises(DimensionError, match="cannot add"):
        quantity(1.0, "C") + quantity(2.0, "J m^-2")
    charge = quantity(1.0, "C").natural() + quantity(2.0, "J m^-2").natural()
    assert charge.magnitude == 3.0
    assert charge.dim == quantity(1.0, "J m^-2").dim

    with pytest.raises(DimensionError, match="cannot add"):
        quantity(1.0, "N") + quantity(1.0, "m")
    with pytest.raises(DimensionError):
        quantity(1.0, "N") - quantity(1.0, "J")


def test_quantity_from_sequence_is_an_array():
    q = quantity([1.0, 2.0], "fm")
    assert isinstance(q.magnitude, np.ndarray)
    np.testing.assert_allclose(q.magnitude, [1e-15, 2e-15])


def test_quantity_natural_and_repr():
    q = quantity(1.0, "A").natural()
    assert q.dim == Dimension(mass=1, time=-3)
    assert repr(q) == "Quantity(1.0, 'kg s^-3')"


def test_quantity_negation():
    assert (-quantity(2.0, "s")).magnitude == -2.0


# ---------------------------------------------------------------------------
# parse_length
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    ("text", "metres"),
    [
        ("1.4fm", 1.4e-15),
        ("1.4 fm", 1.4e-15),
        ("1.4", 1.4e-15),
        ("0.5nm", 0.5e-9),
        ("1.4e-15 m", 1.4e-15),
        (".5 m", 0.5),
    ],
)
def test_parse_length(text: str, metres: float):
    assert parse_length(text) == pytest.approx(metres, rel=1e-12)


def test_parse_length_default_unit():
    assert parse_length("3", default_unit="m") == 3.0


def test_parse_length_rejects_other_dimensions():
    with pytest.raises(DimensionError, match="not a length"):
        parse_length("1.4 s")


def test_parse_length_rejects_missing_number():
    with pytest.raises(DomainError):
        parse_length("fm")


# ---------------------------------------------------------------------------
# check_equation_dims
# ---------------------------------------------------------------------------


def test_check_equation_dims_consistent():
    report = check_equation_dims(parse_unit_expr("N").dim, [parse_unit_expr("C m^-3 m^4").dim])
    assert report.consistent is True
    assert report.lhs == "m kg s^-2"
    assert report.terms[0].consistent is True


def test_check_equation_dims_flags_each_term():
    force = parse_unit_expr("N").dim
    report = check_equation_dims(force, [force, parse_unit_expr("N m").dim])

    assert report.consistent is False
    assert [t.consistent for t in report.terms] == [True, False]
    assert report.terms[1].dimension == "m^2 kg s^-2"


def test_check_equation_dims_requires_terms():
    with pytest.raises(DomainError):
        check_equation_dims(LENGTH, [])


def test_quantity_constructor_keeps_magnitude():
    q = Quantity(3.0, LENGTH)
    assert q.magnitude == 3.0
