# utils/lie_algebra.py
"""Lie algebra data model and structural predicates.

Structure constants follow [e_j, e_k] = sum_l c_{jk}^l e_l and are stored
only for j < k; antisymmetry is implied by construction.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property

import sympy as sp
from sympy.polys.polyerrors import CoercionFailed, PolynomialError

from utils.constants import (
    NILRADICAL_NECESSARY_ONLY,
    NILRADICAL_REJECTED,
    NILRADICAL_VERIFIED,
)
from utils.exceptions import NotSolvableError, ScalarError, ValidationError
from utils.linalg import (
    SubspaceBasis,
    basis_vector,
    extend,
    inverse,
    is_invertible,
    is_zero_matrix,
    matrices_equal,
    normalized,
    nullspace,
    span,
    trace,
    whole_space,
    zero_vector,
)
from utils.scalars import format_scalar, is_zero, normalize, parse_scalar

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """Finite-dimensional Lie algebra given by structure constants.

    Attributes:
        dim (int): Dimension
        brackets (dict): (j, k) with j < k -> {l: c_jk^l}, nonzero entries only
        labels (tuple): Basis labels such as ("e1", ..., "e6")
    """

    dim: int
    brackets: dict = field(default_factory=dict)
    labels: tuple = ()

    def structure_vector(self, j, k):
        """[e_j, e_k] as a column vector."""
        if j == k:
            return zero_vector(self.dim)
        sign = 1
        if j > k:
            j, k, sign = k, j, -1
        coeffs = self.brackets.get((j, k), {})
        return sp.ImmutableMatrix([sign * coeffs.get(l, 0) for l in range(self.dim)])

    @cached_property
    def ad_basis(self):
        """ad(e_i) for every basis vector, columns [e_i, e_j]."""
        mats = []
        for i in range(self.dim):
            cols = [self.structure_vector(i, j) for j in range(self.dim)]
            mats.append(sp.ImmutableMatrix.hstack(*cols))
        return tuple(mats)

    def ad(self, x):
        x = sp.ImmutableMatrix(x)
        total = sp.ImmutableMatrix.zeros(self.dim, self.dim)
        for i in range(self.dim):
            if not is_zero(x[i]):
                total = total + x[i] * self.ad_basis[i]
        return normalized(total)

    def bracket(self, x, y):
        return normalized(self.ad(x) * sp.ImmutableMatrix(y))

    def label_suffixes(self):
        """Label text after the leading 'e', used by the form printer."""
        return tuple(lbl[1:] if lbl.startswith("e") else lbl for lbl in self.labels)

    def is_abelian(self):
        return not self.brackets

    def with_labels(self, labels):
        return LieAlgebra(self.dim, self.brackets, tuple(labels))


def default_labels(dim, start=1):
    return tuple(f"e{i + start}" for i in range(dim))


def lie_algebra(dim, brackets, labels=None):
    """Build a LieAlgebra from any-order brackets.

    Args:
        dim (int): Dimension
        brackets (dict): (j, k) -> {l: coefficient} with 0-based indices; (k, j)
            may be given instead of (j, k), the sign is handled here
        labels (list): Optional basis labels

    Returns:
        LieAlgebra: Normalized algebra (antisymmetry enforced)

    Raises:
        ValidationError: On out-of-range indices or conflicting entries
    """
    if dim < 1:
        raise ValidationError(f"Dimension must be positive, got {dim}")
    stored = {}
    for (j, k), coeffs in brackets.items():
        if not (0 <= j < dim and 0 <= k < dim):
            raise ValidationError(f"Bracket index ({j},{k}) out of range for dim {dim}")
        if j == k:
            raise ValidationError(f"[e_{j},e_{j}] must vanish")
        sign = 1 if j < k else -1
        key = (min(j, k), max(j, k))
        entry = stored.setdefault(key, {})
        for l, c in coeffs.items():
            if not 0 <= l < dim:
                raise ValidationError(f"Bracket target {l} out of range for dim {dim}")
            entry[l] = normalize(entry.get(l, 0) + sign * normalize(c))
    cleaned = {}
    for key in sorted(stored):
        coeffs = {l: c for l, c in sorted(stored[key].items()) if not is_zero(c)}
        if coeffs:
            cleaned[key] = coeffs
    labels = tuple(labels) if labels else default_labels(dim)
    if len(labels) != dim:
        raise ValidationError(f"Expected {dim} labels, got {len(labels)}")
    return LieAlgebra(dim, cleaned, labels)


def abelian(dim, labels=None):
    return lie_algebra(dim, {}, labels)


@dataclass(frozen=True)
class JacobiReport:
    passed: bool
    triple: tuple = None
    value: object = None


def validate_jacobi(L):
    """Check the Jacobi identity on every basis triple i < j < k.

    Returns:
        JacobiReport: passed, or the first failing triple and the nonzero cyclic sum
    """
    for i, j, k in itertools.combinations(range(L.dim), 3):
        ei, ej, ek = (basis_vector(L.dim, t) for t in (i, j, k))
        total = (
            L.bracket(L.structure_vector(i, j), ek)
            + L.bracket(L.structure_vector(j, k), ei)
            + L.bracket(L.structure_vector(k, i), ej)
        )
        if not is_zero_matrix(total):
            logger.debug(f"Jacobi fails at {(i, j, k)}: {list(total)}")
            return JacobiReport(False, (i, j, k), normalized(total))
    return JacobiReport(True)


def is_unimodular(L):
    return all(is_zero(trace(a)) for a in L.ad_basis)


def bracket_span(L, u, w):
    """span [U, W] for two subspaces."""
    vectors = [L.bracket(x, y) for x in u.vectors for y in w.vectors]
    return span(vectors, L.dim)


@dataclass(frozen=True)
class StructureSubspaces:
    commutator: SubspaceBasis
    derived_series: tuple
    lower_central: tuple
    center: SubspaceBasis
    is_solvable: bool
    is_nilpotent: bool


def _series(L, step):
    current = whole_space(L.dim)
    series = [current]
    while True:
        nxt = step(current)
        if len(nxt) == len(current):
            break
        series.append(nxt)
        current = nxt
        if len(current) == 0:
            break
    return tuple(series)


def center(L):
    if L.dim == 0:
        return SubspaceBasis(0, ())
    stacked = sp.ImmutableMatrix.vstack(*L.ad_basis)
    return span(nullspace(stacked), L.dim)


def structure_subspaces(L):
    """Commutator, derived and lower central series, center and the derived flags."""
    g = whole_space(L.dim)
    derived = _series(L, lambda d: bracket_span(L, d, d))
    lower = _series(L, lambda c: bracket_span(L, g, c))
    commutator = derived[1] if len(derived) > 1 else g
    return StructureSubspaces(
        commutator=commutator,
        derived_series=derived,
        lower_central=lower,
        center=center(L),
        is_solvable=len(derived[-1]) == 0,
        is_nilpotent=len(lower[-1]) == 0,
    )


def is_derivation(L, D):
    """Return (True, None) or (False, (j, k)) for the first failing basis pair."""
    D = sp.ImmutableMatrix(D)
    if D.shape != (L.dim, L.dim):
        return False, None
    for j, k in itertools.combinations(range(L.dim), 2):
        lhs = D * L.structure_vector(j, k)
        rhs = L.bracket(D[:, j], basis_vector(L.dim, k)) + L.bracket(basis_vector(L.dim, j), D[:, k])
        if not is_zero_matrix(lhs - rhs):
            return False, (j, k)
    return True, None


def semidirect(k, n, derivations, labels=None, t_last=False):
    """Semidirect product R^k x_B n with [t_j, x] = B_j x.

    Args:
        k (int): Dimension of the abelian factor
        n (LieAlgebra): The ideal
        derivations (list): k derivation matrices of n, pairwise commuting
        labels (list): Optional labels for the result
        t_last (bool): Put the t_j after the basis of n instead of before

    Returns:
        LieAlgebra: Algebra of dimension k + n.dim

    Raises:
        ValidationError: Non-derivation input or non-commuting family
    """
    if len(derivations) != k:
        raise ValidationError(f"Expected {k} derivations, got {len(derivations)}")
    mats = [sp.ImmutableMatrix(B) for B in derivations]
    for idx, B in enumerate(mats):
        ok, pair = is_derivation(n, B)
        if not ok:
            raise ValidationError(f"B_{idx + 1} is not a derivation of n", witness=pair)
    for a, b in itertools.combinations(range(k), 2):
        if not matrices_equal(mats[a] * mats[b], mats[b] * mats[a]):
            raise ValidationError(f"B_{a + 1} and B_{b + 1} do not commute", witness=(a, b))

    if t_last:
        t_pos = [n.dim + j for j in range(k)]
        n_pos = list(range(n.dim))
    else:
        t_pos = list(range(k))
        n_pos = [k + a for a in range(n.dim)]
    brackets = {}
    for (a, b), coeffs in n.brackets.items():
        brackets[(n_pos[a], n_pos[b])] = {n_pos[l]: c for l, c in coeffs.items()}
    for j, B in enumerate(mats):
        for a in range(n.dim):
            brackets[(t_pos[j], n_pos[a])] = {n_pos[l]: B[l, a] for l in range(n.dim)}
    if labels is None:
        labels = default_labels(k + n.dim)
    logger.debug(f"Built semidirect product of dimension {k + n.dim}")
    return lie_algebra(k + n.dim, brackets, labels)


def restrict_to_ideal(L, W):
    """Structure constants of a subalgebra in the given basis of W."""
    brackets = {}
    for a, b in itertools.combinations(range(len(W)), 2):
        v = L.bracket(W.vectors[a], W.vectors[b])
        coords = W.coordinates(v)
        if coords is None:
            raise ValidationError("Subspace is not closed under the bracket", witness=(a, b))
        brackets[(a, b)] = {l: coords[l] for l in range(len(W))}
    return lie_algebra(len(W), brackets) if len(W) else None


@dataclass(frozen=True)
class NilradicalReport:
    status: str
    reason: str = ""


def _ad_nilpotent(m):
    m = sp.ImmutableMatrix(m)
    return is_zero_matrix(normalized(m ** m.rows))


def _binary_forms_have_real_zero(forms, a, b):
    """Decide whether homogeneous forms in (a, b) share a nontrivial real zero.

    Returns:
        bool or None: None when the coefficients are not rational
    """
    forms = [sp.expand(f) for f in forms if not is_zero(f)]
    if not forms:
        return True
    if all(is_zero(f.subs({a: 1, b: 0})) for f in forms):
        return True
    try:
        polys = [sp.Poly(f.subs(b, 1), a, domain="QQ") for f in forms]
    except (PolynomialError, CoercionFailed, ValueError):
        return None
    g = polys[0]
    for p in polys[1:]:
        g = g.gcd(p)
    if g.degree() <= 0:
        return False
    return g.count_roots() > 0


def verify_nilradical(L, W):
    """Verify that W is the nilradical of a solvable algebra.

    Args:
        L (LieAlgebra): Solvable algebra
        W (SubspaceBasis): Candidate

    Returns:
        NilradicalReport: verified, necessary-only or rejected with the reason

    Raises:
        NotSolvableError: If L is not solvable
    """
    subspaces = structure_subspaces(L)
    if not subspaces.is_solvable:
        raise NotSolvableError("Nilradical verification needs a solvable algebra")
    if not W.contains_subspace(subspaces.commutator):
        return NilradicalReport(NILRADICAL_REJECTED, "does not contain [g,g]")
    if not W.contains_subspace(bracket_span(L, whole_space(L.dim), W)):
        return NilradicalReport(NILRADICAL_REJECTED, "not an ideal")
    sub = restrict_to_ideal(L, W)
    if sub is not None and not structure_subspaces(sub).is_nilpotent:
        return NilradicalReport(NILRADICAL_REJECTED, "not nilpotent")

    complement = extend(W.vectors, [basis_vector(L.dim, i) for i in range(L.dim)])
    codim = len(complement)
    if codim == 0:
        return NilradicalReport(NILRADICAL_VERIFIED, "W = g")
    if codim == 1:
        if _ad_nilpotent(L.ad(complement[0])):
            return NilradicalReport(NILRADICAL_REJECTED, "not maximal: ad of the complement is nilpotent")
        return NilradicalReport(NILRADICAL_VERIFIED, "codimension 1")
    if codim == 2:
        a, b = sp.symbols("a b", real=True)
        ad_x = a * L.ad(complement[0]) + b * L.ad(complement[1])
        power = sp.eye(L.dim)
        forms = []
        for _ in range(L.dim):
            power = (power * ad_x).applyfunc(sp.expand)
            forms.append(sp.expand(power.trace()))
        shared = _binary_forms_have_real_zero(forms, a, b)
        if shared is None:
            logger.warning("Nilradical maximality test needs rational power traces; reporting necessary-only")
            return NilradicalReport(NILRADICAL_NECESSARY_ONLY, "non-rational power traces")
        if shared:
            return NilradicalReport(NILRADICAL_REJECTED, "not maximal: complement contains ad-nilpotent elements")
        return NilradicalReport(NILRADICAL_VERIFIED, "codimension 2")
    return NilradicalReport(NILRADICAL_NECESSARY_ONLY, f"codimension {codim}")


def change_basis(L, P, labels=None):
    """Rewrite L in the basis f_i = P e_i."""
    P = sp.ImmutableMatrix(P)
    if not is_invertible(P):
        raise ValidationError("Basis change matrix is singular")
    Pinv = inverse(P)
    brackets = {}
    for a, b in itertools.combinations(range(L.dim), 2):
        v = normalized(Pinv * L.bracket(P[:, a], P[:, b]))
        brackets[(a, b)] = {l: v[l] for l in range(L.dim)}
    return lie_algebra(L.dim, brackets, labels or L.labels)


def is_isomorphism(L1, L2, phi):
    """Return (True, None) or (False, witness) for phi[x,y] = [phi x, phi y]."""
    phi = sp.ImmutableMatrix(phi)
    if L1.dim != L2.dim or not is_invertible(phi):
        return False, "not invertible"
    for j, k in itertools.combinations(range(L1.dim), 2):
        lhs = phi * L1.structure_vector(j, k)
        rhs = L2.bracket(phi[:, j], phi[:, k])
        if not is_zero_matrix(lhs - rhs):
            return False, (j, k)
    return True, None


def algebra_to_json(L):
    """JSON document for an algebra; indices are 1-based positions."""
    return {
        "dim": L.dim,
        "labels": list(L.labels),
        "brackets": [
            {
                "j": j + 1,
                "k": k + 1,
                "coeffs": {str(l + 1): format_scalar(c) for l, c in coeffs.items()},
            }
            for (j, k), coeffs in sorted(L.brackets.items())
        ],
    }


def algebra_from_json(data, symbols=None):
    """Inverse of algebra_to_json.

    Raises:
        ValidationError: Missing fields or bad entries
    """
    try:
        dim = int(data["dim"])
        brackets = {}
        for entry in data.get("brackets", []):
            j, k = int(entry["j"]) - 1, int(entry["k"]) - 1
            coeffs = {int(l) - 1: parse_scalar(str(c), symbols) for l, c in entry["coeffs"].items()}
            brackets[(j, k)] = coeffs
    except (KeyError, TypeError, ValueError, ScalarError) as e:
        raise ValidationError(f"Invalid algebra document: {e}") from e
    return lie_algebra(dim, brackets, data.get("labels"))
