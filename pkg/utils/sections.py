# utils/sections.py
"""Trivializing sections tau = exp(-f) sigma of the canonical bundle.

The exponent f is always a linear functional on the closed coordinates of a
nice basis, so d f = alpha is a closed 1-form and d tau = 0 reduces to
alpha ^ sigma = d(sigma).
"""

import logging
from dataclasses import dataclass

import sympy as sp

from utils.complex_structures import check_almost_complex, is_integrable, obstruction_check, psi
from utils.constants import (
    INVARIANCE_INVARIANT,
    INVARIANCE_NOT_PERIODIC,
    INVARIANCE_TORSION,
    OBSTRUCTION_PSI_VANISHES,
)
from utils.exceptions import (
    InternalConsistencyError,
    NotIntegrableError,
    NotSolvableError,
    UnsupportedError,
    ValidationError,
)
from utils.forms import ce_d, coframe_from_pairs, covector_of, make_form, wedge
from utils.lie_algebra import structure_subspaces
from utils.linalg import basis_vector, extend, image, intersection, normalized
from utils.scalars import I, PI, format_scalar, is_rational, is_zero, normalize, parse_scalar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NiceBasis:
    """Coframe adapted to g = (g' ∩ Jg') + u + Ju + v.

    Attributes:
        s (int): Number of leading pairs whose u^j is closed
        coframe (Coframe): Pairs (u_j, J u_j); closed u-pairs, then v-pairs, then g' ∩ Jg'
        m (int): dim u
        r (int): dim v / 2
        commutator (SubspaceBasis): g'
        core (SubspaceBasis): g' ∩ Jg'
    """

    s: int
    coframe: object
    m: int
    r: int
    commutator: object
    core: object


def nice_basis(L, J):
    """Split off a maximal set of closed coordinates u^1, ..., u^s.

    Raises:
        NotSolvableError: If L is not solvable
        NotIntegrableError: If J is not integrable
        InternalConsistencyError: If a claimed closed coordinate is not closed
    """
    J = check_almost_complex(J)
    structure = structure_subspaces(L)
    if not structure.is_solvable:
        raise NotSolvableError("Nice basis needs a solvable algebra")
    if not is_integrable(L, J):
        raise NotIntegrableError("Nice basis needs an integrable J")
    commutator = structure.commutator
    core = intersection(commutator, image(J, commutator))
    u_part = extend(core.vectors, commutator.vectors)

    # u-pairs: (-J b, b) so that u^j vanishes on g'
    u_vectors = [normalized(-J * b) for b in u_part]
    chosen = []
    for b in u_part:
        chosen.extend([b, normalized(J * b)])
    chosen.extend(core.vectors)
    v_pairs = []
    for i in range(L.dim):
        e = basis_vector(L.dim, i)
        if extend(chosen, [e]):
            v_pairs.append(e)
            chosen.extend([e, normalized(J * e)])
    core_pairs = []
    picked = []
    for w in core.vectors:
        if extend(picked, [w]):
            core_pairs.append(w)
            picked.extend([w, normalized(J * w)])
    coframe = coframe_from_pairs(u_vectors + v_pairs + core_pairs, J)
    s = len(u_vectors) + len(v_pairs)
    for j in range(s):
        if not ce_d(L, coframe.u_form(j)).is_zero():
            raise InternalConsistencyError(f"Coordinate u^{j + 1} of the nice basis is not closed")
    logger.debug(f"Nice basis with s={s} (m={len(u_vectors)}, r={len(v_pairs)})")
    return NiceBasis(s, coframe, len(u_vectors), len(v_pairs), commutator, core)


@dataclass(frozen=True)
class RankOneData:
    """tau = exp(i lambda xi) sigma with xi(e0) = 1 and Ker xi = Ker psi."""

    e0_index: int
    xi: tuple
    lam: object
    coordinate: str = None


@dataclass(frozen=True)
class SectionDescriptor:
    """Closed (n,0)-form tau = exp(-f) sigma with d f = alpha.

    Attributes:
        sigma (Form): Invariant (n,0)-form of the nice coframe
        alpha (Form): Closed complex 1-form with d(sigma) = alpha ^ sigma
        coefficients (tuple): C_j = -psi(v_j) + i psi(u_j) for every pair
        closed_coords (tuple): Labels of the closed coordinates u^1..u^s
        nice (NiceBasis): The basis the descriptor was built on
        rank_one (RankOneData): Reduction when psi([g,g]) = 0 and psi != 0
    """

    sigma: object
    alpha: object
    coefficients: tuple
    closed_coords: tuple
    nice: NiceBasis
    rank_one: RankOneData = None

    @property
    def lam(self):
        return self.rank_one.lam if self.rank_one else None

    @property
    def exponent(self):
        """f as a covector (f = alpha on coordinates)."""
        return covector_of(self.alpha)

    def is_invariant(self):
        return self.alpha.is_zero()


def _coordinate_label(L, vector, j):
    for i in range(L.dim):
        if list(vector) == list(basis_vector(L.dim, i)):
            return L.labels[i]
    return f"u{j + 1}"


def explicit_rank_one(L, J, e0):
    """lambda = -1/2 psi(e0) for tau = exp(-(i/2) psi(e0) t) sigma.

    Raises:
        ValidationError: If psi([g,g]) != 0 or e0 lies in Ker psi
    """
    form = psi(L, J)
    status = obstruction_check(L, J)
    if status.status != OBSTRUCTION_PSI_VANISHES:
        raise ValidationError("psi does not vanish on [g, g]", witness=status.witness)
    value = form(sp.ImmutableMatrix(e0))
    if is_zero(value):
        raise ValidationError("e0 lies in Ker psi")
    return normalize(-value / 2)


def _rank_one_data(L, J, form):
    e0_index = form.first_nonzero()
    value = form.values[e0_index]
    xi = tuple(normalize(c / value) for c in form.values)
    lam = explicit_rank_one(L, J, basis_vector(L.dim, e0_index))
    return RankOneData(e0_index, xi, lam, L.labels[e0_index])


def build_section(L, J):
    """Closed (n,0)-form as an exponential twist of the invariant sigma.

    When psi vanishes identically alpha is zero. When psi([g,g]) = 0 the
    descriptor carries the rank-one form alpha = (i/2) psi = -i lambda xi.

    Returns:
        SectionDescriptor: Descriptor passing verify_section
    """
    J = check_almost_complex(J)
    nice = nice_basis(L, J)
    cf = nice.coframe
    form = psi(L, J)
    coefficients = tuple(normalize(-form(cf.v[j]) + I * form(cf.u[j])) for j in range(cf.n))
    for j in range(nice.s, cf.n):
        if not is_zero(coefficients[j]):
            raise InternalConsistencyError(f"C_{j + 1} != 0 outside the closed coordinates")
    rank_one = None
    if form.is_zero():
        alpha = make_form(L.dim, 1, {})
    elif obstruction_check(L, J).status == OBSTRUCTION_PSI_VANISHES:
        rank_one = _rank_one_data(L, J, form)
        alpha = form.as_form().scale(I / 2)
    else:
        alpha = make_form(L.dim, 1, {})
        for j in range(nice.s):
            alpha = alpha + cf.u_form(j).scale(coefficients[j] / 2)
    closed = tuple(_coordinate_label(L, cf.u[j], j) for j in range(nice.s))
    descriptor = SectionDescriptor(cf.sigma(), alpha, coefficients, closed, nice, rank_one)
    logger.debug(f"Section built with lambda={descriptor.lam} on closed coordinates {closed}")
    return descriptor


@dataclass(frozen=True)
class SectionCheck:
    passed: bool
    failing: str = None
    value: object = None


def verify_section(L, J, section):
    """d(alpha) = 0 and alpha ^ sigma = d(sigma), both exactly."""
    d_alpha = ce_d(L, section.alpha)
    if not d_alpha.is_zero():
        return SectionCheck(False, "d(alpha) = 0", d_alpha)
    gap = wedge(section.alpha, section.sigma) - ce_d(L, section.sigma)
    if not gap.is_zero():
        return SectionCheck(False, "alpha ^ sigma = d(sigma)", gap)
    return SectionCheck(True)


def parse_period(text):
    """Period literal such as "2pi", "pi/2" or "1".

    Raises:
        ValidationError: If the value is not positive
    """
    value = parse_scalar(text) if isinstance(text, str) else normalize(text)
    if not value.is_positive:
        raise ValidationError(f"Period must be positive, got {format_scalar(value)}")
    return value


@dataclass(frozen=True)
class PeriodData:
    """Lattice period for each closed coordinate, keyed by coordinate label.

    A None label stands for the one coordinate the section varies along.
    """

    periods: dict

    @classmethod
    def single(cls, label, value):
        return cls({label: parse_period(value)})


@dataclass(frozen=True)
class InvarianceResult:
    status: str
    order: int = None
    ratio: object = None
    coordinate: str = None


def _classify(lam, p, coordinate):
    # tau picks up exp(i lam p) under translation by p
    ratio = normalize(lam * p / (2 * PI))
    if not is_rational(ratio):
        return InvarianceResult(INVARIANCE_NOT_PERIODIC, None, ratio, coordinate)
    if ratio.q == 1:
        return InvarianceResult(INVARIANCE_INVARIANT, 1, ratio, coordinate)
    return InvarianceResult(INVARIANCE_TORSION, int(ratio.q), ratio, coordinate)


def _check_label(label, coordinate):
    if label is not None and label != coordinate:
        raise ValidationError(
            f"Period given for {label}, but the section varies along {coordinate}", witness=label
        )


def lattice_invariance(section, periods):
    """Invariant, TorsionOrder k or NotPeriodic for one period direction.

    Args:
        section (SectionDescriptor): Built section
        periods (PeriodData): Periods of the closed coordinates

    Returns:
        InvarianceResult: Status with the torsion order

    Raises:
        UnsupportedError: For several periods or several active coordinates
        ValidationError: If the period is labeled with another coordinate
    """
    if section.is_invariant():
        return InvarianceResult(INVARIANCE_INVARIANT, 1, sp.Integer(0))
    if len(periods.periods) != 1:
        raise UnsupportedError("Invariance is decided for a single period direction only")
    label, p = next(iter(periods.periods.items()))
    if section.rank_one is not None:
        coordinate = section.rank_one.coordinate
        _check_label(label, coordinate)
        lam = section.rank_one.lam
    else:
        active = [j for j in range(section.nice.s) if not is_zero(section.coefficients[j])]
        if len(active) != 1:
            raise UnsupportedError("Several closed coordinates carry the exponent")
        j = active[0]
        coordinate = section.closed_coords[j]
        _check_label(label, coordinate)
        # alpha = C_j/2 u^j = -i lam u^j
        lam = normalize(I * section.coefficients[j] / 2)
    if not is_zero(sp.im(lam)):
        # |tau| changes along the period direction
        result = InvarianceResult(INVARIANCE_NOT_PERIODIC, None, None, coordinate)
    else:
        result = _classify(lam, p, coordinate)
    logger.info(f"Invariance for lambda={format_scalar(lam)}, p={format_scalar(p)}: {result.status}")
    return result


def _format_one_form(a, labels):
    parts = []
    for (i,), c in sorted(a.terms.items()):
        text = format_scalar(c)
        if text == "1":
            coeff = ""
        elif text == "-1":
            coeff = "-"
        elif any(ch in text[1:] for ch in "+-"):
            coeff = f"({text})"
        else:
            coeff = text
        piece = f"{coeff}{labels[i]}"
        parts.append(piece if not parts or piece.startswith("-") else f"+{piece}")
    return "(" + "".join(parts) + ")"


def section_to_json(section, labels):
    """{"sigma": "(e0+ie3)^(e1+ie2)", "alpha": {...}, "lambda": ..., "closed_coords": [...]}."""
    cf = section.nice.coframe
    sigma_text = "^".join(_format_one_form(cf.gamma(j), labels) for j in range(cf.n))
    alpha = {labels[i]: format_scalar(c) for (i,), c in sorted(section.alpha.terms.items())}
    return {
        "sigma": sigma_text,
        "alpha": alpha,
        "lambda": format_scalar(section.lam) if section.lam is not None else None,
        "closed_coords": list(section.closed_coords),
    }
