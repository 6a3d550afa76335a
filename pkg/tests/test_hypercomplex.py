# tests/test_hypercomplex.py
import itertools

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from utils.complex_structures import pairs_structure
from utils.constants import VERDICT_INVARIANT_TRIVIAL
from utils.exceptions import ValidationError
from utils.hypercomplex import (
    HypercomplexTriple,
    SpherePoint,
    obata,
    psi_sphere_check,
    quaternion_closure,
    rational_sphere_points,
    realification_double,
    sphere_cs,
    standard_triple,
    triple_to_json,
    validate_triple,
)
from utils.lie_algebra import abelian
from utils.linalg import basis_vector, matrices_equal, span

POINTS = rational_sphere_points(16)
TRIPLE = standard_triple(8)


def test_sphere_points():
    assert len(POINTS) == 16
    assert tuple(POINTS[0]) == (1, 0, 0)
    assert len({tuple(p) for p in POINTS}) == 16
    for p in POINTS:
        assert sum(x * x for x in p) == 1


def test_off_sphere_point_rejected():
    with pytest.raises(ValidationError):
        SpherePoint(1, 1, 0)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(POINTS), st.sampled_from(POINTS))
def test_quaternion_closure(a, b):
    assert quaternion_closure(TRIPLE, a, b)


@pytest.mark.parametrize("a", POINTS[:6])
def test_sphere_structures_square_to_minus_one(a):
    J = sphere_cs(TRIPLE, a)
    assert matrices_equal(J * J, -sp.eye(8))


def test_standard_triple_needs_multiple_of_four():
    with pytest.raises(ValidationError):
        standard_triple(6)


def test_abelian_triple():
    L = abelian(4)
    T = standard_triple(4)
    assert validate_triple(L, T).passed
    obata(L, T)
    report = psi_sphere_check(L, T)
    assert report.hypothesis
    assert all(zero and verdict == VERDICT_INVARIANT_TRIVIAL for _, zero, verdict in report.samples)


def test_validate_triple_dimension():
    with pytest.raises(ValidationError):
        validate_triple(abelian(3), standard_triple(4))


def test_wrong_sign_triple():
    T = standard_triple(4)
    flipped = HypercomplexTriple(T.J1, T.J2, -T.J3)
    assert validate_triple(abelian(4), flipped).failing == "J1 J2 = J3"


def test_non_integrable_member(kodaira_algebra):
    report = validate_triple(kodaira_algebra, standard_triple(4))
    assert not report.passed
    assert report.failing == "J1 integrable"


def test_realification_of_aff(aff_r):
    J = pairs_structure(2, [(0, 1)])
    hat, triple = realification_double(aff_r, J, span([basis_vector(2, 0)], 2))
    assert hat.dim == 4
    assert validate_triple(hat, triple).passed


def test_realification_needs_splitting(aff_r):
    J = pairs_structure(2, [(0, 1)])
    with pytest.raises(ValidationError):
        realification_double(aff_r, J, span([basis_vector(2, 0), basis_vector(2, 1)], 2))


def test_ghat_sphere(catalog_instance):
    inst = catalog_instance("hypercomplex_ghat")
    obata(inst.L, inst.triple)
    report = psi_sphere_check(inst.L, inst.triple, POINTS[:5])
    assert not report.hypothesis
    values = [dict(zip(inst.L.labels, p.values)) for p in report.psis]
    assert values[0]["e8"] == -4
    assert values[1]["e3"] == -4
    assert values[2]["e7"] == -4
    for a, zero, verdict in report.samples:
        assert not zero
        assert verdict is None


def test_triple_json():
    data = triple_to_json(standard_triple(4))
    assert set(data) == {"J1", "J2", "J3"}
    assert data["J1"][1][0] == "1"
    assert all(len(row) == 4 for J in data.values() for row in J)
    assert list(itertools.chain.from_iterable(data["J1"])).count("0") == 12
