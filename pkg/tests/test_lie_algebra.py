# tests/test_lie_algebra.py
import pytest
import sympy as sp

from utils.constants import NILRADICAL_NECESSARY_ONLY, NILRADICAL_REJECTED, NILRADICAL_VERIFIED
from utils.exceptions import NotSolvableError, ValidationError
from utils.lie_algebra import (
    abelian,
    algebra_from_json,
    algebra_to_json,
    change_basis,
    is_derivation,
    is_isomorphism,
    is_unimodular,
    lie_algebra,
    semidirect,
    structure_subspaces,
    validate_jacobi,
    verify_nilradical,
)
from utils.linalg import basis_vector, matrix, span

SU2 = {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}


def basis(dim, *indices):
    return span([basis_vector(dim, i) for i in indices], dim)


def test_reversed_pairs_flip_sign():
    L = lie_algebra(3, {(1, 0): {2: 1}})
    assert L.brackets == {(0, 1): {2: -1}}
    assert list(L.structure_vector(1, 0)) == [0, 0, 1]


@pytest.mark.parametrize(
    "brackets",
    [
        {(0, 3): {1: 1}},
        {(0, 1): {5: 1}},
        {(1, 1): {0: 1}},
    ],
)
def test_bad_brackets_rejected(brackets):
    with pytest.raises(ValidationError):
        lie_algebra(3, brackets)


def test_label_count_checked():
    with pytest.raises(ValidationError):
        lie_algebra(2, {}, labels=["a"])


def test_jacobi_passes_on_kodaira(kodaira_algebra):
    assert validate_jacobi(kodaira_algebra).passed


def test_jacobi_failure_reports_triple():
    brackets = {(1, 2): {3: 1}, (0, 1): {2: 1}, (0, 2): {1: -1}, (0, 3): {1: 1}}
    report = validate_jacobi(lie_algebra(4, brackets))
    assert not report.passed
    assert report.triple == (0, 1, 2)
    assert list(report.value) == [0, -1, 0, 0]


def test_kodaira_series(kodaira_algebra):
    s = structure_subspaces(kodaira_algebra)
    assert [len(d) for d in s.derived_series] == [4, 3, 1, 0]
    assert [len(c) for c in s.lower_central] == [4, 3]
    assert s.is_solvable
    assert not s.is_nilpotent
    assert s.center.equals(basis(4, 3))


def test_heisenberg_is_nilpotent(h3):
    s = structure_subspaces(h3)
    assert s.is_nilpotent
    assert s.commutator.equals(basis(3, 2))
    assert s.center.equals(basis(3, 2))


def test_su2_not_solvable():
    s = structure_subspaces(lie_algebra(3, SU2))
    assert not s.is_solvable
    assert len(s.commutator) == 3


def test_unimodular(kodaira_algebra, aff_r):
    assert is_unimodular(kodaira_algebra)
    assert not is_unimodular(aff_r)


def test_semidirect_rebuilds_kodaira(h3, kodaira_algebra):
    L = semidirect(1, h3, [[[0, -1, 0], [1, 0, 0], [0, 0, 0]]])
    assert L.brackets == kodaira_algebra.brackets


def test_semidirect_rejects_non_derivation(h3):
    assert not is_derivation(h3, matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]]))[0]
    with pytest.raises(ValidationError):
        semidirect(1, h3, [[[1, 0, 0], [0, 0, 0], [0, 0, 0]]])


def test_semidirect_rejects_non_commuting_family():
    B1 = [[1, 0], [0, 0]]
    B2 = [[0, 1], [0, 0]]
    with pytest.raises(ValidationError):
        semidirect(2, abelian(2), [B1, B2])


def test_semidirect_t_last_puts_action_on_last_vector():
    L = semidirect(1, abelian(2), [[[1, 0], [0, -1]]], t_last=True)
    assert list(L.structure_vector(2, 0)) == [1, 0, 0]
    assert list(L.structure_vector(2, 1)) == [0, -1, 0]


def test_nilradical_codimension_one(kodaira_algebra):
    report = verify_nilradical(kodaira_algebra, basis(4, 1, 2, 3))
    assert report.status == NILRADICAL_VERIFIED


def test_nilradical_whole_algebra(h3):
    assert verify_nilradical(h3, basis(3, 0, 1, 2)).status == NILRADICAL_VERIFIED


def test_nilradical_rejections(kodaira_algebra, aff_r):
    assert verify_nilradical(kodaira_algebra, basis(4, 2, 3)).status == NILRADICAL_REJECTED
    assert verify_nilradical(aff_r, basis(2, 0)).status == NILRADICAL_REJECTED


def test_nilradical_codimension_two():
    L = lie_algebra(4, {(0, 1): {1: 1}, (2, 3): {3: 1}})
    assert verify_nilradical(L, basis(4, 1, 3)).status == NILRADICAL_VERIFIED


def test_nilradical_not_maximal_in_codimension_two():
    # e2 is central, so span(e1, e3) is not maximal
    L = lie_algebra(4, {(0, 1): {1: 1}})
    assert verify_nilradical(L, basis(4, 1, 3)).status == NILRADICAL_REJECTED


def test_nilradical_high_codimension_is_necessary_only():
    L = abelian(4)
    assert verify_nilradical(L, basis(4, 0)).status == NILRADICAL_NECESSARY_ONLY


def test_nilradical_needs_solvable():
    with pytest.raises(NotSolvableError):
        verify_nilradical(lie_algebra(3, SU2), basis(3, 0))


def test_change_basis_is_isomorphism(kodaira_algebra):
    P = matrix([[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 1, 0, 4]])
    L2 = change_basis(kodaira_algebra, P)
    ok, witness = is_isomorphism(L2, kodaira_algebra, P)
    assert ok and witness is None


def test_non_isomorphism_has_witness(kodaira_algebra):
    ok, witness = is_isomorphism(kodaira_algebra, kodaira_algebra, sp.diag(1, 2, 1, 1))
    assert not ok
    assert witness is not None


def test_json_round_trip(kodaira_algebra):
    data = algebra_to_json(kodaira_algebra)
    assert data["brackets"][0] == {"j": 1, "k": 2, "coeffs": {"3": "1"}}
    again = algebra_from_json(data)
    assert again.brackets == kodaira_algebra.brackets
    assert again.labels == kodaira_algebra.labels


def test_json_missing_field():
    with pytest.raises(ValidationError):
        algebra_from_json({"brackets": []})
