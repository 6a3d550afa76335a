# utils/complex_structures.py
"""Complex-structure diagnostics on Lie algebras.

Integrability (checked twice), the canonical 1-form
psi(x) = Tr(J ad x) - Tr ad(Jx), the invariant-triviality verdict, the
Chern-Ricci form and the compact-quotient obstruction psi([g, g]) = 0.
"""

import itertools
import logging
from dataclasses import dataclass

import sympy as sp

from utils.constants import (
    OBSTRUCTION_OBSTRUCTED,
    OBSTRUCTION_PSI_VANISHES,
    VERDICT_INVARIANT_TRIVIAL,
    VERDICT_NO_INVARIANT_SECTION,
    VERDICT_NOT_INTEGRABLE,
)
from utils.exceptions import (
    InternalConsistencyError,
    NotIntegrableError,
    ValidationError,
)
from utils.forms import adapted_coframe, bigrade, ce_d, make_form, one_form
from utils.lie_algebra import bracket_span, is_unimodular
from utils.linalg import (
    SubspaceBasis,
    basis_vector,
    columns,
    image,
    intersection,
    inverse,
    is_invertible,
    is_zero_matrix,
    matrices_equal,
    normalized,
    trace,
    whole_space,
)
from utils.scalars import I, format_scalar, is_zero, normalize

logger = logging.getLogger(__name__)


def check_almost_complex(J):
    """Raise ValidationError unless J is square of even size with J^2 = -I."""
    J = sp.ImmutableMatrix(J)
    if J.rows != J.cols or J.rows % 2:
        raise ValidationError(f"J must be square of even size, got {J.rows}x{J.cols}")
    if not matrices_equal(J * J, -sp.ImmutableMatrix.eye(J.rows)):
        raise ValidationError("J^2 != -I")
    return J


def _as_vector(dim, value):
    if isinstance(value, dict):
        return sp.ImmutableMatrix([normalize(value.get(i, 0)) for i in range(dim)])
    return normalized(sp.ImmutableMatrix(value))


def complex_structure(dim, images):
    """Build J from the images of basis vectors.

    Args:
        dim (int): Dimension
        images (dict): j -> J e_j, each either a vector or {k: coefficient}.
            Either all basis vectors are given, or a half-basis whose images
            complete it to a basis; then J(J e_j) = -e_j fixes the rest.

    Returns:
        ImmutableMatrix: J with J^2 = -I

    Raises:
        ValidationError: If the data does not determine an almost complex structure
    """
    if len(images) == dim:
        J = columns([_as_vector(dim, images[j]) for j in range(dim)])
        return check_almost_complex(J)
    sources = [basis_vector(dim, j) for j in sorted(images)]
    targets = [_as_vector(dim, images[j]) for j in sorted(images)]
    domain = columns(sources + targets)
    if len(sources) * 2 != dim or not is_invertible(domain):
        raise ValidationError("Images do not complete the given vectors to a basis")
    values = columns(targets + [-s for s in sources])
    return check_almost_complex(normalized(values * inverse(domain)))


def pairs_structure(dim, pairs):
    """J from pairs (j, k, sign) meaning J e_j = sign * e_k."""
    images = {}
    for entry in pairs:
        j, k = entry[0], entry[1]
        sign = entry[2] if len(entry) > 2 else 1
        images[j] = {k: sign}
    return complex_structure(dim, images)


def conjugate_structure(J, P):
    """Matrix of J in the basis f_i = P e_i."""
    P = sp.ImmutableMatrix(P)
    return normalized(inverse(P) * sp.ImmutableMatrix(J) * P)


def nijenhuis(L, J, x, y):
    """N_J(x, y) = [x,y] + J([Jx,y] + [x,Jy]) - [Jx,Jy]."""
    J = sp.ImmutableMatrix(J)
    x, y = sp.ImmutableMatrix(x), sp.ImmutableMatrix(y)
    Jx, Jy = J * x, J * y
    return normalized(L.bracket(x, y) + J * (L.bracket(Jx, y) + L.bracket(x, Jy)) - L.bracket(Jx, Jy))


def _tensor_witness(L, J):
    for j, k in itertools.combinations(range(L.dim), 2):
        value = nijenhuis(L, J, basis_vector(L.dim, j), basis_vector(L.dim, k))
        if not is_zero_matrix(value):
            return (j, k)
    return None


def _bigrading_integrable(L, J, coframe):
    for j in range(coframe.n):
        parts = bigrade(J, ce_d(L, coframe.gamma(j)), coframe)
        if (0, 2) in parts:
            return False
    return True


def integrability_witness(L, J):
    """First basis pair with N_J != 0, or None; both criteria must agree.

    Raises:
        InternalConsistencyError: If the tensor and bigrading criteria disagree
    """
    J = check_almost_complex(J)
    witness = _tensor_witness(L, J)
    by_forms = _bigrading_integrable(L, J, adapted_coframe(L, J))
    if (witness is None) != by_forms:
        raise InternalConsistencyError(
            f"Nijenhuis tensor and bigrading criteria disagree (tensor witness {witness})"
        )
    return witness


def is_integrable(L, J):
    return integrability_witness(L, J) is None


def is_abelian_cs(L, J):
    """[Jx, Jy] = [x, y] on all basis pairs."""
    J = check_almost_complex(J)
    for j, k in itertools.combinations(range(L.dim), 2):
        lhs = L.bracket(J[:, j], J[:, k])
        if not is_zero_matrix(lhs - L.structure_vector(j, k)):
            return False
    return True


def is_bi_invariant(L, J):
    """ad(Jx) = J ad(x) for every basis x (complex Lie algebra structure)."""
    J = check_almost_complex(J)
    return all(
        matrices_equal(L.ad(J[:, j]), J * L.ad_basis[j]) for j in range(L.dim)
    )


@dataclass(frozen=True)
class CanonicalOneForm:
    """psi as a covector: values[j] = psi(e_j)."""

    values: tuple

    def __call__(self, x):
        return normalize(sum(c * xi for c, xi in zip(self.values, x)))

    def is_zero(self):
        return all(is_zero(v) for v in self.values)

    def as_form(self):
        return one_form(self.values)

    def first_nonzero(self):
        for j, v in enumerate(self.values):
            if not is_zero(v):
                return j
        return None

    def to_json(self, labels):
        return {labels[j]: format_scalar(v) for j, v in enumerate(self.values)}


def psi(L, J):
    """psi(x) = Tr(J ad x) - Tr ad(Jx) on each basis vector."""
    J = check_almost_complex(J)
    values = []
    for j in range(L.dim):
        values.append(normalize(trace(J * L.ad_basis[j]) - trace(L.ad(J[:, j]))))
    return CanonicalOneForm(tuple(values))


@dataclass(frozen=True)
class ObstructionStatus:
    status: str
    witness: tuple = None
    value: object = None


def obstruction_check(L, J):
    """PsiVanishesOnCommutator, or ObstructedNotTorsion with a bracket [e_j, e_k] where psi != 0."""
    form = psi(L, J)
    for j, k in itertools.combinations(range(L.dim), 2):
        value = form(L.structure_vector(j, k))
        if not is_zero(value):
            return ObstructionStatus(OBSTRUCTION_OBSTRUCTED, (j, k), value)
    return ObstructionStatus(OBSTRUCTION_PSI_VANISHES)


@dataclass(frozen=True)
class TrivialityVerdict:
    """Outcome of the invariant-triviality decision.

    Attributes:
        verdict (str): InvariantTrivial, NoInvariantSection or NotIntegrable
        witness: Basis index x with psi(x) != 0, or the pair with N_J != 0
        psi (CanonicalOneForm): Canonical 1-form (None when not integrable)
        obstruction (ObstructionStatus): Compact-quotient obstruction when integrable
        sigma: The (n,0)-form of the adapted coframe used in the self-check
    """

    verdict: str
    witness: object = None
    psi: CanonicalOneForm = None
    obstruction: ObstructionStatus = None
    sigma: object = None


def decide_invariant_trivial(L, J):
    """Decide whether sigma can be chosen closed and left-invariant.

    Also computes d(sigma) directly from the forms module and raises when the
    two disagree.

    Returns:
        TrivialityVerdict: verdict with witness

    Raises:
        InternalConsistencyError: If the verdict contradicts d(sigma)
    """
    J = check_almost_complex(J)
    sigma = adapted_coframe(L, J).sigma()
    closed = ce_d(L, sigma).is_zero()
    witness = integrability_witness(L, J)
    if witness is not None:
        verdict = TrivialityVerdict(VERDICT_NOT_INTEGRABLE, witness, sigma=sigma)
    else:
        form = psi(L, J)
        obstruction = obstruction_check(L, J)
        if form.is_zero():
            verdict = TrivialityVerdict(VERDICT_INVARIANT_TRIVIAL, None, form, obstruction, sigma)
        else:
            verdict = TrivialityVerdict(
                VERDICT_NO_INVARIANT_SECTION, form.first_nonzero(), form, obstruction, sigma
            )
    if closed != (verdict.verdict == VERDICT_INVARIANT_TRIVIAL):
        raise InternalConsistencyError(
            f"Verdict {verdict.verdict} contradicts d(sigma) {'= 0' if closed else '!= 0'}"
        )
    logger.debug(f"Invariant triviality verdict: {verdict.verdict}")
    return verdict


def dsigma_beta(L, J, coframe=None):
    """The (0,1)-form beta = 1/4 sum_j (-psi(v_j) + i psi(u_j)) gammabar_j with d(sigma) = beta ^ sigma.

    Raises:
        NotIntegrableError: If J is not integrable
    """
    J = check_almost_complex(J)
    if not is_integrable(L, J):
        raise NotIntegrableError("dsigma_beta needs an integrable J")
    cf = coframe or adapted_coframe(L, J)
    form = psi(L, J)
    beta = make_form(L.dim, 1, {})
    for j in range(cf.n):
        c = -form(cf.v[j]) + I * form(cf.u[j])
        beta = beta + cf.gamma_bar(j).scale(c / 4)
    # coframe-free form: beta = (i/2) psi^{0,1}
    expected = bigrade(J, form.as_form().scale(I / 2), cf).get((0, 1))
    if expected is None:
        expected = make_form(L.dim, 1, {})
    if not (beta - expected).is_zero():
        raise InternalConsistencyError("beta differs from (i/2) psi^{0,1}")
    return beta


def power_invariant_trivial(L, J, k):
    """Invariant triviality of K^k, which holds iff beta = 0."""
    if k < 1:
        raise ValidationError(f"Power must be at least 1, got {k}")
    return dsigma_beta(L, J).is_zero()


def g10_unimodular(L, J):
    """Tr(J ad x) = 0 for all x; must agree with psi = 0 on unimodular algebras.

    Raises:
        ValidationError: If L is not unimodular
        NotIntegrableError: If J is not integrable
        InternalConsistencyError: If the two criteria disagree
    """
    J = check_almost_complex(J)
    if not is_unimodular(L):
        raise ValidationError("g10_unimodular needs a unimodular algebra")
    if not is_integrable(L, J):
        raise NotIntegrableError("g10_unimodular needs an integrable J")
    result = all(is_zero(trace(J * a)) for a in L.ad_basis)
    if result != psi(L, J).is_zero():
        raise InternalConsistencyError("Tr(J ad x) criterion disagrees with psi")
    return result


@dataclass(frozen=True)
class ChernRicciForm:
    """rho(e_j, e_k) as an antisymmetric matrix."""

    matrix: sp.ImmutableMatrix

    def as_form(self):
        n = self.matrix.rows
        return make_form(n, 2, {(j, k): self.matrix[j, k] for j, k in itertools.combinations(range(n), 2)})

    def is_zero(self):
        return is_zero_matrix(self.matrix)


def chern_ricci(L, J):
    """rho(x, y) = 1/2 (Tr(J ad[x,y]) - Tr ad(J[x,y]))."""
    J = check_almost_complex(J)
    rows = [[0] * L.dim for _ in range(L.dim)]
    for j, k in itertools.combinations(range(L.dim), 2):
        z = L.structure_vector(j, k)
        value = normalize((trace(J * L.ad(z)) - trace(L.ad(J * z))) / 2)
        rows[j][k], rows[k][j] = value, -value
    return ChernRicciForm(sp.ImmutableMatrix(rows))


def chern_ricci_form(L, J):
    """rho as a 2-form, for comparison with d(psi)."""
    return chern_ricci(L, J).as_form()


@dataclass(frozen=True)
class AlmostAbelianReport:
    a: object
    trace_A: object
    trace_J1A: object
    holds: bool
    unimodular_holds: bool
    psi_e1: object
    psi_e2n: object


def almost_abelian_report(L, J, t, u):
    """Read a, Tr A and Tr(J1 A) off an almost abelian splitting g = R t + u.

    Args:
        L (LieAlgebra): The algebra
        J: Complex structure
        t: Vector e_2n outside the ideal
        u (SubspaceBasis): Codimension-one abelian ideal

    Returns:
        AlmostAbelianReport: The three scalars and the two conditions

    Raises:
        ValidationError: If u is not an abelian ideal or J does not preserve the block form
    """
    J = check_almost_complex(J)
    t = sp.ImmutableMatrix(t)
    if len(u) != L.dim - 1 or u.contains(t):
        raise ValidationError("u must be a codimension-one subspace not containing t")
    if len(bracket_span(L, u, u)):
        raise ValidationError("u is not abelian")
    if not u.contains_subspace(bracket_span(L, whole_space(L.dim), u)):
        raise ValidationError("u is not an ideal")
    e1 = normalized(-J * t)
    if not u.contains(e1):
        raise ValidationError("-J t does not lie in u")
    k = intersection(u, image(J, u))
    if len(k) != L.dim - 2:
        raise ValidationError("u ∩ Ju has the wrong dimension")
    B = L.ad(t)
    Be1 = normalized(B * e1)
    full = SubspaceBasis(L.dim, (e1,) + k.vectors)
    coords = full.coordinates(Be1)
    a = coords[0]
    A_cols, J1_cols = [], []
    for w in k.vectors:
        image_w = k.coordinates(normalized(B * w))
        if image_w is None:
            raise ValidationError("ad t does not preserve u ∩ Ju")
        A_cols.append(image_w)
        J1_cols.append(k.coordinates(normalized(J * w)))
    A = columns(A_cols, len(k))
    J1 = columns(J1_cols, len(k))
    if not matrices_equal(A * J1, J1 * A):
        raise ValidationError("A does not commute with J restricted to u ∩ Ju")
    trace_A, trace_J1A = trace(A), trace(J1 * A)
    psi_e1 = normalize(-2 * a - trace_A)
    form = psi(L, J)
    if not (is_zero(form(e1) - psi_e1) and is_zero(form(t) - trace_J1A)):
        raise InternalConsistencyError("Almost abelian formulas disagree with psi")
    holds = is_zero(a + trace_A / 2) and is_zero(trace_J1A)
    return AlmostAbelianReport(
        a=a,
        trace_A=trace_A,
        trace_J1A=trace_J1A,
        holds=holds,
        unimodular_holds=holds and is_zero(a) and is_zero(trace_A),
        psi_e1=psi_e1,
        psi_e2n=trace_J1A,
    )


def verdict_to_json(verdict, labels):
    """Serialize a verdict the way reports store it."""
    data = {"integrable": verdict.verdict != VERDICT_NOT_INTEGRABLE, "verdict": verdict.verdict}
    if verdict.psi is not None:
        data["psi"] = verdict.psi.to_json(labels)
    if verdict.verdict == VERDICT_NO_INVARIANT_SECTION:
        data["witness"] = labels[verdict.witness]
    elif verdict.verdict == VERDICT_NOT_INTEGRABLE:
        data["witness"] = [labels[i] for i in verdict.witness]
    if verdict.obstruction is not None:
        data["obstruction"] = verdict.obstruction.status
        if verdict.obstruction.witness is not None:
            j, k = verdict.obstruction.witness
            data["obstruction_witness"] = [labels[j], labels[k]]
    return data
