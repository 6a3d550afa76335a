# tests/test_linalg.py
import pytest
import sympy as sp

from utils.exceptions import ScalarError
from utils.linalg import (
    SubspaceBasis,
    basis_vector,
    extend,
    image,
    intersection,
    inverse,
    matrix,
    nullspace,
    rank,
    solve,
    span,
    vector,
    whole_space,
)


def e(dim, i):
    return basis_vector(dim, i)


def test_inverse_is_exact():
    m = matrix([[2, 1], [1, 1]])
    assert inverse(m) == matrix([[1, -1], [-1, 2]])


def test_inverse_over_quadratic_field():
    m = matrix([[1, sp.sqrt(2)], [0, 1]])
    assert inverse(m) * m == sp.eye(2)


def test_singular_inverse_raises():
    with pytest.raises(ScalarError):
        inverse(matrix([[1, 2], [2, 4]]))


def test_non_square_inverse_raises():
    with pytest.raises(ScalarError):
        inverse(matrix([[1, 2, 3]]))


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[1, 2], [2, 4]], 1),
        ([[1, 0], [0, 1]], 2),
        ([[0, 0], [0, 0]], 0),
        ([[1, sp.I], [sp.I, -1]], 1),
    ],
)
def test_rank(rows, expected):
    assert rank(matrix(rows)) == expected


def test_nullspace_of_rank_one():
    kernel = nullspace(matrix([[1, 1, 0], [0, 0, 0]]))
    assert len(kernel) == 2
    for v in kernel:
        assert matrix([[1, 1, 0]]) * v == sp.zeros(1, 1)


def test_solve_consistent_and_inconsistent():
    m = matrix([[1, 1], [0, 1]])
    x = solve(m, vector([3, 1]))
    assert list(x) == [2, 1]
    assert solve(matrix([[1, 1], [1, 1]]), vector([1, 2])) is None


def test_span_is_canonical():
    a = span([vector([1, 1, 0]), vector([1, -1, 0])], 3)
    b = span([e(3, 0), e(3, 1)], 3)
    assert a.vectors == b.vectors
    assert a.equals(b)


def test_dependent_basis_rejected():
    with pytest.raises(ScalarError):
        SubspaceBasis(2, (vector([1, 0]), vector([2, 0])))


def test_contains_and_coordinates():
    w = span([vector([1, 1, 0]), vector([0, 0, 1])], 3)
    assert w.contains(vector([2, 2, 5]))
    assert not w.contains(e(3, 0))
    assert w.coordinates(e(3, 0)) is None
    coords = w.coordinates(vector([2, 2, 5]))
    assert w.matrix * coords == vector([2, 2, 5])


def test_empty_subspace():
    zero = SubspaceBasis(3, ())
    assert zero.contains(vector([0, 0, 0]))
    assert not zero.contains(e(3, 1))
    assert len(zero) == 0


def test_extend_skips_dependent_candidates():
    added = extend([e(3, 0)], [vector([2, 0, 0]), e(3, 1), vector([1, 1, 0]), e(3, 2)])
    assert added == [e(3, 1), e(3, 2)]


def test_intersection_of_planes():
    u = span([e(3, 0), e(3, 1)], 3)
    w = span([e(3, 1), e(3, 2)], 3)
    meet = intersection(u, w)
    assert len(meet) == 1
    assert meet.contains(e(3, 1))


def test_image_under_map():
    J = matrix([[0, -1], [1, 0]])
    assert image(J, span([e(2, 0)], 2)).equals(span([e(2, 1)], 2))


def test_whole_space_contains_everything():
    g = whole_space(4)
    assert len(g) == 4
    assert g.contains_subspace(span([vector([1, 2, 3, 4])], 4))
