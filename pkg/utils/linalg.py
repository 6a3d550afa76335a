# utils/linalg.py
"""Exact linear algebra over scalars: rank, kernels, inverses and subspaces.

All matrices are ``sympy.ImmutableMatrix`` with normalized entries; every
pivot decision goes through the exact zero test of ``utils.scalars``.
"""

import logging
from dataclasses import dataclass

import sympy as sp

from utils.exceptions import ScalarError
from utils.scalars import is_zero, normalize

logger = logging.getLogger(__name__)


def matrix(rows):
    """Build a normalized immutable matrix from nested rows of scalars."""
    return sp.ImmutableMatrix([[normalize(x) for x in row] for row in rows])


def vector(values):
    """Column vector from a flat list of scalars."""
    return sp.ImmutableMatrix([normalize(x) for x in values])


def basis_vector(dim, index):
    return sp.ImmutableMatrix([1 if i == index else 0 for i in range(dim)])


def zero_vector(dim):
    return sp.ImmutableMatrix.zeros(dim, 1)


def identity(dim):
    return sp.ImmutableMatrix.eye(dim)


def normalized(m):
    return sp.ImmutableMatrix(m).applyfunc(normalize)


def is_zero_matrix(m):
    return all(is_zero(x) for x in m)


def matrices_equal(a, b):
    if a.shape != b.shape:
        return False
    return is_zero_matrix(sp.ImmutableMatrix(a) - sp.ImmutableMatrix(b))


def trace(m):
    return normalize(sp.ImmutableMatrix(m).trace())


def determinant(m):
    return normalize(sp.ImmutableMatrix(m).det(method="berkowitz"))


def block_diagonal(*blocks):
    return normalized(sp.diag(*blocks))


def rref(m):
    """Exact reduced row echelon form.

    Returns:
        tuple: (reduced matrix, pivot columns)
    """
    reduced, pivots = sp.Matrix(m).rref(iszerofunc=is_zero, simplify=normalize)
    return normalized(reduced), tuple(pivots)


def rank(m):
    if 0 in sp.ImmutableMatrix(m).shape:
        return 0
    return len(rref(m)[1])


def nullspace(m):
    """Basis of the kernel as a list of column vectors."""
    m = sp.Matrix(m)
    if m.rows == 0:
        return [basis_vector(m.cols, i) for i in range(m.cols)]
    return [normalized(v) for v in m.nullspace(simplify=normalize, iszerofunc=is_zero)]


def inverse(m):
    """Exact inverse via Gauss-Jordan elimination on [M | I].

    Raises:
        ScalarError: If the matrix is singular
    """
    m = sp.ImmutableMatrix(m)
    n = m.rows
    if m.cols != n:
        raise ScalarError(f"Cannot invert a {m.rows}x{m.cols} matrix")
    reduced, pivots = rref(m.row_join(sp.ImmutableMatrix.eye(n)))
    if tuple(pivots[:n]) != tuple(range(n)):
        raise ScalarError("Matrix is singular")
    return normalized(reduced[:, n:])


def is_invertible(m):
    m = sp.ImmutableMatrix(m)
    return m.rows == m.cols and rank(m) == m.rows


def solve(m, b):
    """Solve M x = b exactly, returning one solution or None when inconsistent."""
    m = sp.ImmutableMatrix(m)
    n = m.cols
    reduced, pivots = rref(m.row_join(sp.ImmutableMatrix(b)))
    if n in pivots:
        return None
    x = [sp.Integer(0)] * n
    for row, col in enumerate(pivots):
        x[col] = reduced[row, n]
    return sp.ImmutableMatrix(x)


def columns(vectors, dim=None):
    """Stack column vectors side by side."""
    vectors = list(vectors)
    if not vectors:
        return sp.ImmutableMatrix.zeros(dim or 0, 0)
    return sp.ImmutableMatrix.hstack(*vectors)


@dataclass(frozen=True)
class SubspaceBasis:
    """Linearly independent coordinate vectors spanning a subspace.

    Attributes:
        dim (int): Dimension of the ambient space
        vectors (tuple): Column vectors, independent by exact rank
    """

    dim: int
    vectors: tuple = ()

    def __post_init__(self):
        if self.vectors and rank(columns(self.vectors)) != len(self.vectors):
            raise ScalarError("SubspaceBasis vectors are linearly dependent")

    def __len__(self):
        return len(self.vectors)

    @property
    def matrix(self):
        return columns(self.vectors, self.dim)

    def contains(self, v):
        if not self.vectors:
            return is_zero_matrix(v)
        return rank(self.matrix.row_join(sp.ImmutableMatrix(v))) == len(self.vectors)

    def contains_subspace(self, other):
        return all(self.contains(v) for v in other.vectors)

    def coordinates(self, v):
        """Coordinates of v in this basis, or None when v is outside."""
        if not self.vectors:
            return sp.ImmutableMatrix([]) if is_zero_matrix(v) else None
        return solve(self.matrix, v)

    def equals(self, other):
        return len(self) == len(other) and self.contains_subspace(other)


def span(vectors, dim):
    """Canonical basis (reduced echelon rows) of the span of some vectors."""
    vectors = [sp.ImmutableMatrix(v) for v in vectors]
    if not vectors:
        return SubspaceBasis(dim, ())
    rows = sp.ImmutableMatrix.hstack(*vectors).T
    reduced, pivots = rref(rows)
    basis = tuple(normalized(reduced[i, :].T) for i in range(len(pivots)))
    return SubspaceBasis(dim, basis)


def extend(basis_vectors, candidates):
    """Greedily append candidates that are independent of what is already chosen."""
    chosen = [sp.ImmutableMatrix(v) for v in basis_vectors]
    added = []
    for c in candidates:
        trial = chosen + [sp.ImmutableMatrix(c)]
        if rank(columns(trial)) == len(trial):
            chosen.append(sp.ImmutableMatrix(c))
            added.append(sp.ImmutableMatrix(c))
    return added


def intersection(u, w):
    """Intersection of two subspaces of the same ambient space."""
    if not u.vectors or not w.vectors:
        return SubspaceBasis(u.dim, ())
    stacked = u.matrix.row_join(-w.matrix)
    kernel = nullspace(stacked)
    k = len(u)
    vectors = [u.matrix * sp.ImmutableMatrix(z[:k]) for z in kernel]
    return span(vectors, u.dim)


def image(m, subspace):
    """Image of a subspace under a linear map."""
    m = sp.ImmutableMatrix(m)
    return span([m * v for v in subspace.vectors], m.rows)


def whole_space(dim):
    return SubspaceBasis(dim, tuple(basis_vector(dim, i) for i in range(dim)))
