# tests/test_scalars.py
"""Exact scalar arithmetic, parsing and printing."""

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from utils.exceptions import ScalarError
from utils.scalars import (
    I,
    PI,
    divide,
    field_of,
    format_scalar,
    is_integer,
    is_rational,
    is_zero,
    log_unit_of,
    log_unit_symbol,
    normalize,
    parse_scalar,
    unit_value,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def gaussian(a, b):
    return normalize(normalize(a) + normalize(b) * I)


def quadratic(a, b):
    return normalize(normalize(a) + normalize(b) * sp.sqrt(2))


@pytest.mark.parametrize(
    "text, expected",
    [
        ("3/2", sp.Rational(3, 2)),
        ("-4/6", sp.Rational(-2, 3)),
        ("1+2i", 1 + 2 * sp.I),
        ("(1+√5)/2", (1 + sp.sqrt(5)) / 2),
        ("2pi", 2 * sp.pi),
        ("π/2", sp.pi / 2),
        ("−1", sp.Integer(-1)),
    ],
)
def test_parse_scalar(text, expected):
    assert is_zero(parse_scalar(text) - expected)


@pytest.mark.parametrize(
    "value, text",
    [
        (sp.Rational(1, 2), "1/2"),
        (2 * sp.pi, "2*π"),
        (sp.I, "i"),
        (1 + 2 * sp.I, "1+2i"),
        (sp.Integer(-3), "-3"),
    ],
)
def test_format_scalar(value, text):
    assert format_scalar(value) == text


def test_format_parse_round_trip():
    for value in (sp.Rational(-7, 3), 3 * sp.pi / 4, sp.sqrt(5), 2 - sp.I / 3):
        assert is_zero(parse_scalar(format_scalar(value)) - value)


def test_parameters_and_unbound_names():
    assert parse_scalar("2*alpha", {"alpha": sp.Rational(1, 2)}) == 1
    with pytest.raises(ScalarError):
        parse_scalar("q + 1")


def test_unreadable_and_empty_literals():
    with pytest.raises(ScalarError):
        parse_scalar("")
    with pytest.raises(ScalarError):
        parse_scalar("1 $ 2")


def test_division_by_zero_is_an_error():
    with pytest.raises(ScalarError):
        divide(1, 0)
    with pytest.raises(ScalarError):
        divide(sp.sqrt(2), sp.sqrt(2) - sp.sqrt(2))


def test_radical_denominators_are_rationalized():
    value = normalize(1 / (1 + sp.sqrt(2)))
    assert is_zero(value - (sp.sqrt(2) - 1))
    assert normalize(1 / (1 + sp.I)) == sp.Rational(1, 2) - sp.I / 2


@pytest.mark.parametrize(
    "value, field",
    [
        (sp.Rational(3, 4), "Q"),
        (1 + sp.I, "Q(i)"),
        (sp.sqrt(8), "Q(√2)"),
        (sp.I * sp.sqrt(5) + 1, "Q(i,√5)"),
    ],
)
def test_field_of(value, field):
    assert field_of(value) == field


def test_field_of_rejects_values_outside_the_tower():
    with pytest.raises(ScalarError):
        field_of(sp.sqrt(2) + sp.sqrt(3))
    with pytest.raises(ScalarError):
        field_of(sp.cbrt(2))
    with pytest.raises(ScalarError):
        field_of(PI)


def test_predicates():
    assert is_rational("5/7")
    assert not is_rational(sp.sqrt(2))
    assert is_integer(normalize(Fraction(6, 3)))
    assert not is_integer(sp.Rational(1, 2))


@pytest.mark.parametrize("m", [3, 4, 7, 10])
def test_unit_of_norm_one(m):
    u = unit_value(m)
    assert is_zero(u + 1 / u - m)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_unit_of_norm_minus_one(m):
    u = unit_value(m, norm=-1)
    assert is_zero(u - 1 / u - m)


def test_log_unit_symbols_round_trip():
    assert log_unit_of(log_unit_symbol(5)) == (5, 1)
    assert log_unit_of(log_unit_symbol(2, norm=-1)) == (2, -1)
    assert log_unit_of(sp.Symbol("x")) is None
    assert parse_scalar("2*t_3") == 2 * log_unit_symbol(3)


@settings(max_examples=40, deadline=None)
@given(rationals, rationals, rationals, rationals)
def test_gaussian_field_axioms(a, b, c, d):
    x, y = gaussian(a, b), gaussian(c, d)
    assert is_zero(normalize(x * y) - normalize(y * x))
    assert is_zero(normalize(x * (x + y)) - normalize(x * x + x * y))
    if not is_zero(y):
        assert is_zero(divide(normalize(x * y), y) - x)


@settings(max_examples=40, deadline=None)
@given(rationals, rationals, rationals, rationals)
def test_quadratic_field_axioms(a, b, c, d):
    x, y = quadratic(a, b), quadratic(c, d)
    assert is_zero(normalize((x + y) - y) - x)
    if not is_zero(y):
        quotient = divide(x, y)
        assert field_of(quotient) in ("Q", "Q(√2)")
        assert is_zero(normalize(quotient * y) - x)
