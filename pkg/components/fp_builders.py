# components/fp_builders.py
"""Almost nilpotent Hermitian data with one-dimensional [n, n].

FP1: J[n,n] is orthogonal to n. Basis e_1, k_1 = (e_2..e_{2n-1}), e_2n with
Je_1 = e_2n, ad e_2n|n = a (+) A and [Y, Z] = -eta(Y, Z) e_1 on k_1.

FP2: J[n,n] lies in n. Basis e_1, e_2, k_2, e_{2n-1}, e_2n with Je_{2j-1} = e_2j
and eta = xi + (gamma + alpha o J) ^ e^{2n-1} + (a_2 - a_1) e^2 ^ e^{2n-1}.
"""

import logging
from dataclasses import dataclass

import sympy as sp

from utils.complex_structures import is_integrable
from utils.exceptions import InternalConsistencyError, ValidationError
from utils.lie_algebra import default_labels, lie_algebra, semidirect, validate_jacobi
from utils.linalg import is_zero_matrix, matrices_equal, normalized, trace
from utils.scalars import is_zero, normalize

logger = logging.getLogger(__name__)


def _square(m, size, name):
    m = normalized(sp.ImmutableMatrix(m)) if size else sp.ImmutableMatrix.zeros(0, 0)
    if m.shape != (size, size):
        raise ValidationError(f"{name} must be {size}x{size}, got {m.shape}")
    return m


def _check_structure(J, name):
    if J.rows and not matrices_equal(J * J, -sp.ImmutableMatrix.eye(J.rows)):
        raise ValidationError(f"{name}^2 != -I", witness=name)


def _check_antisymmetric(eta, name):
    if not is_zero_matrix(eta + eta.T):
        raise ValidationError(f"{name} is not antisymmetric", witness=name)


def pullback(A, eta):
    """(A^* eta)(X, Y) = eta(AX, Y) + eta(X, AY) as a matrix."""
    return normalized(A.T * eta + eta * A)


@dataclass(frozen=True)
class FP1Data:
    """FP1 data: (a, A, eta, J_1) on k_1 of dimension 2n - 2."""

    n: int
    a: object
    A: sp.ImmutableMatrix
    eta: sp.ImmutableMatrix
    J1: sp.ImmutableMatrix


def validate_fp1(d):
    """Check AJ_1 = J_1A, eta(J.,J.) = eta and A^*eta = a eta.

    Raises:
        ValidationError: With the violated equation as witness
    """
    k = 2 * d.n - 2
    A, eta, J1 = _square(d.A, k, "A"), _square(d.eta, k, "eta"), _square(d.J1, k, "J1")
    _check_structure(J1, "J1")
    _check_antisymmetric(eta, "eta")
    if not matrices_equal(A * J1, J1 * A):
        raise ValidationError("A J1 != J1 A", witness="AJ1 = J1A")
    if not matrices_equal(J1.T * eta * J1, eta):
        raise ValidationError("eta is not J-invariant", witness="eta(J.,J.) = eta")
    if not matrices_equal(pullback(A, eta), normalize(d.a) * eta):
        raise ValidationError("A^*eta != a eta", witness="A^*eta = a eta")
    return A, eta, J1


def fp1_construct(d):
    """Build (g = R e_2n x n, J) from FP1 data.

    Returns:
        tuple: (LieAlgebra, J matrix)
    """
    A, eta, J1 = validate_fp1(d)
    k = 2 * d.n - 2
    dim_n = k + 1
    brackets = {}
    for i in range(k):
        for j in range(i + 1, k):
            if not is_zero(eta[i, j]):
                brackets[(1 + i, 1 + j)] = {0: -eta[i, j]}
    n_alg = lie_algebra(dim_n, brackets, default_labels(dim_n))
    B = sp.zeros(dim_n, dim_n)
    B[0, 0] = normalize(d.a)
    if k:
        B[1:, 1:] = A
    L = semidirect(1, n_alg, [B], labels=default_labels(dim_n + 1), t_last=True)
    dim = L.dim
    J = sp.zeros(dim, dim)
    J[dim - 1, 0] = 1
    J[0, dim - 1] = -1
    if k:
        J[1:dim - 1, 1:dim - 1] = J1
    logger.debug(f"FP1 algebra of dimension {dim}")
    return L, sp.ImmutableMatrix(J)


def fp1_verdict_conditions(d):
    """(a + Tr A / 2 = 0, Tr(J_1 A) = 0) for the closed (n,0)-form criterion."""
    A, J1 = sp.ImmutableMatrix(d.A), sp.ImmutableMatrix(d.J1)
    return is_zero(normalize(d.a) + trace(A) / 2), is_zero(trace(J1 * A))


@dataclass(frozen=True)
class FP2Data:
    """FP2 data on k_2 of dimension 2n - 4.

    Attributes:
        a, a1, a2, v1, v2: Scalars of ad e_2n
        A (ImmutableMatrix): Block on k_2
        alpha, gamma (tuple): Covectors on k_2 (rows e_1 and e_2 of ad e_2n)
        v (tuple): Vector in k_2 (image of e_{2n-1})
        xi (ImmutableMatrix): 2-form on k_2
        J (ImmutableMatrix): J restricted to k_2
    """

    a: object
    a1: object
    a2: object
    A: sp.ImmutableMatrix
    v1: object
    v2: object
    alpha: tuple
    gamma: tuple
    v: tuple
    xi: sp.ImmutableMatrix
    J: sp.ImmutableMatrix


def _row(values, size, name):
    row = sp.ImmutableMatrix([[normalize(x) for x in values]]) if size else sp.ImmutableMatrix.zeros(1, 0)
    if row.shape != (1, size):
        raise ValidationError(f"{name} must have {size} entries")
    return row


def validate_fp2(d):
    """Check [A, J] = 0 and the three FP2 equations.

    Raises:
        ValidationError: With the violated equation as witness
    """
    k = sp.ImmutableMatrix(d.A).rows if d.A is not None else 0
    A, xi, J = _square(d.A, k, "A"), _square(d.xi, k, "xi"), _square(d.J, k, "J")
    alpha, gamma = _row(d.alpha, k, "alpha"), _row(d.gamma, k, "gamma")
    v = _row(d.v, k, "v").T
    a, a1, a2 = normalize(d.a), normalize(d.a1), normalize(d.a2)
    _check_structure(J, "J")
    _check_antisymmetric(xi, "xi")
    if not matrices_equal(A * J, J * A):
        raise ValidationError("[A, J] != 0", witness="[A, J] = 0")
    if not is_zero((a2 - a1) * (a + a2 - a1)):
        raise ValidationError("(a2 - a1)(a + a2 - a1) != 0", witness="0 = (a2-a1)(a+a2-a1)")
    if not is_zero_matrix(pullback(A, xi) - a1 * xi):
        raise ValidationError("A^*xi != a1 xi", witness="0 = A^*xi - a1 xi")
    beta = normalized(gamma + alpha * J)
    third = (a - a1) * beta + beta * A + (a2 - a1) * gamma - v.T * xi
    if not is_zero_matrix(normalized(third)):
        raise ValidationError(
            "third FP2 equation fails",
            witness="0 = (a-a1)(gamma+alpha J) + A^*(gamma+alpha J) + (a2-a1)gamma - i_v xi",
        )
    return A, xi, J, alpha, gamma, v, beta


def fp2_construct(d):
    """Build (g = R e_2n x n, J) from FP2 data.

    Raises:
        ValidationError: If the data violates an FP2 equation
        InternalConsistencyError: If valid data does not give an integrable Lie algebra
    """
    A, xi, J_k, alpha, gamma, v, beta = validate_fp2(d)
    k = A.rows
    dim_n = k + 3
    last = dim_n - 1
    # k_1 = span(e_2, k_2, e_{2n-1}); eta as a matrix on it
    eta = sp.zeros(k + 2, k + 2)
    eta[1:1 + k, 1:1 + k] = xi
    for i in range(k):
        eta[1 + i, k + 1] = beta[0, i]
        eta[k + 1, 1 + i] = -beta[0, i]
    eta[0, k + 1] = normalize(d.a2) - normalize(d.a1)
    eta[k + 1, 0] = -eta[0, k + 1]
    brackets = {}
    for i in range(k + 2):
        for j in range(i + 1, k + 2):
            if not is_zero(eta[i, j]):
                brackets[(1 + i, 1 + j)] = {0: -eta[i, j]}
    n_alg = lie_algebra(dim_n, brackets, default_labels(dim_n))

    B = sp.zeros(dim_n, dim_n)
    B[0, 0], B[1, 1], B[last, last] = normalize(d.a1), normalize(d.a2), normalize(d.a)
    B[0, last], B[1, last] = normalize(d.v1), normalize(d.v2)
    for i in range(k):
        B[0, 2 + i] = alpha[0, i]
        B[1, 2 + i] = gamma[0, i]
        B[2 + i, last] = v[i, 0]
    if k:
        B[2:2 + k, 2:2 + k] = A
    try:
        L = semidirect(1, n_alg, [B], labels=default_labels(dim_n + 1), t_last=True)
    except ValidationError as e:
        raise InternalConsistencyError(f"FP2 equations hold but ad e_2n is not a derivation: {e}") from e

    dim = L.dim
    J = sp.zeros(dim, dim)
    for p in range(0, dim, 2):
        J[p + 1, p] = 1
        J[p, p + 1] = -1
    if k:
        J[2:2 + k, 2:2 + k] = J_k
    J = sp.ImmutableMatrix(J)
    if not validate_jacobi(L).passed or not is_integrable(L, J):
        raise InternalConsistencyError("FP2 data does not give an integrable complex structure")
    logger.debug(f"FP2 algebra of dimension {dim}")
    return L, J


def fp2_verdict_conditions(d):
    """(Tr A = -2(a + a1), Tr(J A) = 0) for the closed (n,0)-form criterion."""
    A, J = sp.ImmutableMatrix(d.A), sp.ImmutableMatrix(d.J)
    first = is_zero(trace(A) + 2 * (normalize(d.a) + normalize(d.a1))) if A.rows else is_zero(d.a + d.a1)
    second = is_zero(trace(J * A)) if A.rows else True
    return first, second
