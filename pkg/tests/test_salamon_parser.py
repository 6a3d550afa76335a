# tests/test_salamon_parser.py
import pytest
import sympy as sp

from components.catalog import ENTRIES
from components.salamon_parser import format_salamon, parse_salamon
from utils.exceptions import SalamonElaborationError, SalamonSyntaxError


def test_heisenberg():
    L = parse_salamon("(0,0,−e^{12})")
    assert L.dim == 3
    assert L.brackets == {(0, 1): {2: 1}}
    assert L.labels == ("e1", "e2", "e3")
    assert format_salamon(L) == "(0,0,-e^{12})"


def test_short_atoms_and_spaces():
    L = parse_salamon("( 0 , 0 , -e12 )")
    assert L.brackets == {(0, 1): {2: 1}}


def test_g1_bracket_sign():
    L = parse_salamon("(e^{15},-e^{25},-e^{35},e^{45},0,0)")
    # d e^1 = e^15 means [e1, e5] = -e1
    assert list(L.structure_vector(0, 4)) == [-1, 0, 0, 0, 0, 0]
    assert list(L.structure_vector(1, 4)) == [0, 1, 0, 0, 0, 0]


def test_coefficients_and_parameters():
    L = parse_salamon("(a*e^{23},0,0)", params={"a": 2})
    assert L.brackets == {(1, 2): {0: -2}}
    L = parse_salamon("(1/2*e^{23}+3*e^{12},0,0)")
    assert L.brackets == {(0, 1): {0: -3}, (1, 2): {0: sp.Rational(-1, 2)}}


def test_zero_based_labels():
    L = parse_salamon("(0,0,-e^{01})", index_base=0)
    assert L.labels == ("e0", "e1", "e2")
    assert format_salamon(L, index_base=0) == "(0,0,-e^{01})"


def test_syntax_error_at_end_of_input():
    text = "(e^{15}"
    with pytest.raises(SalamonSyntaxError) as exc:
        parse_salamon(text)
    assert exc.value.position == len(text)
    assert "end of input" in str(exc.value)


@pytest.mark.parametrize("text", ["0,0", "(0,,0)", "(e^{1},0)", "(0,0) extra", "(e^{12} e^{13},0,0)"])
def test_syntax_errors(text):
    with pytest.raises(SalamonSyntaxError):
        parse_salamon(text)


def test_unbound_parameter():
    with pytest.raises(SalamonElaborationError):
        parse_salamon("(a*e^{23},0,0)")


@pytest.mark.parametrize("text", ["(e^{14},0,0)", "(e^{11},0,0)"])
def test_bad_indices(text):
    with pytest.raises(SalamonElaborationError):
        parse_salamon(text)


def test_jacobi_failure():
    text = "(0, e^{02}-e^{03}, -e^{01}, -e^{12})"
    with pytest.raises(SalamonElaborationError) as exc:
        parse_salamon(text, index_base=0)
    assert exc.value.witness == (0, 1, 2)


@pytest.mark.parametrize("entry", [e.name for e in ENTRIES])
def test_catalog_round_trip(catalog_instance, entry):
    instance = catalog_instance(entry)
    if instance.salamon is None:
        pytest.skip(f"{entry} is not given in shorthand")
    text, base = instance.salamon
    L = parse_salamon(text, params=instance.params, labels=instance.L.labels, index_base=base)
    again = parse_salamon(format_salamon(L, base), labels=L.labels, index_base=base)
    assert again.brackets == L.brackets
    assert again.brackets == instance.L.brackets
