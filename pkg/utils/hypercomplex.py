# utils/hypercomplex.py
"""Hypercomplex triples, the sphere of complex structures and the Obata connection."""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

import sympy as sp

from utils.complex_structures import decide_invariant_trivial, integrability_witness, psi
from utils.constants import DEFAULT_SPHERE_SAMPLES, VERDICT_INVARIANT_TRIVIAL
from utils.exceptions import InternalConsistencyError, ValidationError
from utils.lie_algebra import default_labels, lie_algebra
from utils.linalg import (
    basis_vector,
    columns,
    inverse,
    is_invertible,
    is_zero_matrix,
    matrices_equal,
    normalized,
    span,
)
from utils.scalars import is_zero, normalize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HypercomplexTriple:
    J1: sp.ImmutableMatrix
    J2: sp.ImmutableMatrix
    J3: sp.ImmutableMatrix

    def __iter__(self):
        return iter((self.J1, self.J2, self.J3))

    @property
    def dim(self):
        return self.J1.rows


@dataclass(frozen=True)
class TripleReport:
    passed: bool
    failing: str = None
    witness: object = None


def validate_triple(L, T):
    """Quaternion relations and integrability of J1, J2, J3.

    Raises:
        ValidationError: If the dimension is not a multiple of 4
    """
    if L.dim % 4:
        raise ValidationError(f"Hypercomplex structures need dimension 4n, got {L.dim}")
    minus_one = -sp.ImmutableMatrix.eye(L.dim)
    for idx, J in enumerate(T, start=1):
        if not matrices_equal(J * J, minus_one):
            return TripleReport(False, f"J{idx}^2 = -I", idx)
    if not matrices_equal(T.J1 * T.J2, T.J3):
        return TripleReport(False, "J1 J2 = J3")
    if not matrices_equal(T.J2 * T.J1, -T.J3):
        return TripleReport(False, "J2 J1 = -J3")
    for idx, J in enumerate(T, start=1):
        witness = integrability_witness(L, J)
        if witness is not None:
            return TripleReport(False, f"J{idx} integrable", (idx, witness))
    return TripleReport(True)


@dataclass(frozen=True)
class SpherePoint:
    """Rational point (a1, a2, a3) on the unit sphere."""

    a1: object
    a2: object
    a3: object

    def __post_init__(self):
        values = [normalize(x) for x in (self.a1, self.a2, self.a3)]
        for name, v in zip(("a1", "a2", "a3"), values):
            object.__setattr__(self, name, v)
        if not is_zero(sum(v * v for v in values) - 1):
            raise ValidationError(f"({', '.join(str(v) for v in values)}) is not on the unit sphere")

    def __iter__(self):
        return iter((self.a1, self.a2, self.a3))

    def dot(self, other):
        return normalize(sum(x * y for x, y in zip(self, other)))

    def to_json(self):
        return [str(x) for x in self]


def _stereographic(s, t):
    s, t = sp.Rational(s.numerator, s.denominator), sp.Rational(t.numerator, t.denominator)
    d = s * s + t * t + 1
    return SpherePoint(2 * s / d, 2 * t / d, (s * s + t * t - 1) / d)


def rational_sphere_points(count=DEFAULT_SPHERE_SAMPLES):
    """The three poles followed by inverse stereographic images of small rationals."""
    points = [SpherePoint(1, 0, 0), SpherePoint(0, 1, 0), SpherePoint(0, 0, 1)]
    seeds = list(dict.fromkeys(Fraction(p, q) for q in (1, 2, 3) for p in range(-3, 4)))
    seen = {tuple(p) for p in points}
    for s, t in itertools.product(seeds, repeat=2):
        if len(points) >= count:
            break
        point = _stereographic(s, t)
        if tuple(point) not in seen:
            seen.add(tuple(point))
            points.append(point)
    return points[:count]


def sphere_cs(T, a):
    """J_a = a1 J1 + a2 J2 + a3 J3.

    Raises:
        InternalConsistencyError: If J_a^2 != -I
    """
    J = normalized(a.a1 * T.J1 + a.a2 * T.J2 + a.a3 * T.J3)
    if not matrices_equal(J * J, -sp.ImmutableMatrix.eye(J.rows)):
        raise InternalConsistencyError(f"J_a^2 != -I at a = {tuple(a)}")
    return J


@dataclass(frozen=True)
class ObataTable:
    """nabla_{e_i} e_j for all basis pairs."""

    coefficients: dict

    def nabla(self, x, y):
        x, y = sp.ImmutableMatrix(x), sp.ImmutableMatrix(y)
        dim = len(x)
        total = sp.ImmutableMatrix.zeros(dim, 1)
        for i, j in itertools.product(range(dim), repeat=2):
            if not is_zero(x[i]) and not is_zero(y[j]):
                total = total + x[i] * y[j] * self.coefficients[(i, j)]
        return normalized(total)


def obata(L, T):
    """Obata connection on left-invariant fields.

    nabla_X Y = 1/2 ([X,Y] + J1[J1 X,Y] - J2[X,J2 Y] + J3[J1 X,J2 Y]).

    Raises:
        ValidationError: If torsion-freeness or parallelism of some J fails, with the pair
    """
    J1, J2, J3 = T
    table = {}
    for i, j in itertools.product(range(L.dim), repeat=2):
        x, y = basis_vector(L.dim, i), basis_vector(L.dim, j)
        value = (
            L.bracket(x, y)
            + J1 * L.bracket(J1 * x, y)
            - J2 * L.bracket(x, J2 * y)
            + J3 * L.bracket(J1 * x, J2 * y)
        )
        table[(i, j)] = normalized(value / 2)
    result = ObataTable(table)

    for i, j in itertools.combinations(range(L.dim), 2):
        torsion = table[(i, j)] - table[(j, i)] - L.structure_vector(i, j)
        if not is_zero_matrix(torsion):
            raise ValidationError("Obata connection has torsion", witness=(i, j))
    for idx, J in enumerate(T, start=1):
        for i, j in itertools.product(range(L.dim), repeat=2):
            x = basis_vector(L.dim, i)
            lhs = result.nabla(x, J[:, j])
            rhs = J * table[(i, j)]
            if not is_zero_matrix(lhs - rhs):
                raise ValidationError(f"J{idx} is not parallel", witness=(i, j))
    logger.debug(f"Obata connection verified on {L.dim ** 2} basis pairs")
    return result


@dataclass(frozen=True)
class SphereReport:
    """Canonical forms psi_1, psi_2, psi_3 and the sampled sphere.

    Attributes:
        psis (tuple): CanonicalOneForm for J1, J2, J3
        hypothesis (bool): Some psi_alpha vanishes identically
        samples (tuple): (SpherePoint, psi_a is zero, verdict or None)
    """

    psis: tuple
    hypothesis: bool
    samples: tuple


def psi_sphere_check(L, T, samples=None):
    """Sample the sphere of complex structures.

    psi_a = a1 psi_1 + a2 psi_2 + a3 psi_3 is checked on every sample. When some
    psi_alpha vanishes, every sampled J_a must be invariantly trivial.

    Raises:
        InternalConsistencyError: On a linearity failure or a counterexample to the vanishing
    """
    samples = rational_sphere_points() if samples is None else samples
    psis = tuple(psi(L, J) for J in T)
    hypothesis = any(p.is_zero() for p in psis)
    rows = []
    for a in samples:
        J_a = sphere_cs(T, a)
        form = psi(L, J_a)
        for j in range(L.dim):
            combined = sum(c * p.values[j] for c, p in zip(a, psis))
            if not is_zero(form.values[j] - combined):
                raise InternalConsistencyError(f"psi is not linear along the sphere at {tuple(a)}")
        verdict = None
        if hypothesis:
            if not form.is_zero():
                raise InternalConsistencyError(f"psi_a != 0 at {tuple(a)} although some psi_alpha vanishes")
            verdict = decide_invariant_trivial(L, J_a).verdict
            if verdict != VERDICT_INVARIANT_TRIVIAL:
                raise InternalConsistencyError(f"J_a at {tuple(a)} is not invariantly trivial")
        rows.append((a, form.is_zero(), verdict))
    return SphereReport(psis, hypothesis, tuple(rows))


def quaternion_closure(T, a, b):
    """J_a J_b + J_b J_a = -2 (a.b) I."""
    Ja, Jb = sphere_cs(T, a), sphere_cs(T, b)
    return matrices_equal(Ja * Jb + Jb * Ja, -2 * a.dot(b) * sp.ImmutableMatrix.eye(Ja.rows))


def standard_triple(dim):
    """Left multiplication by i, j, k on H^n = R^{4n} in blocks (1, i, j, k)."""
    if dim % 4:
        raise ValidationError(f"Quaternionic structures need dimension 4n, got {dim}")
    qi = sp.Matrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]])
    qj = sp.Matrix([[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]])
    blocks = dim // 4
    J1 = sp.ImmutableMatrix(sp.diag(*([qi] * blocks)))
    J2 = sp.ImmutableMatrix(sp.diag(*([qj] * blocks)))
    return HypercomplexTriple(J1, J2, normalized(J1 * J2))


def _subalgebra(L, W):
    for x, y in itertools.combinations(W.vectors, 2):
        if not W.contains(L.bracket(x, y)):
            return False
    return True


def realification_double(L, J, g_plus):
    """(g_C)_R with J1 = i on g_+ and -i on g_- = J g_+, J2 = J + iJ, J3 = J1 J2.

    The basis of the double is e_1..e_d followed by i e_1..i e_d.

    Raises:
        ValidationError: If g_+ or J g_+ is not a subalgebra, or they do not span g
    """
    J = sp.ImmutableMatrix(J)
    d = L.dim
    g_minus = span([J * v for v in g_plus.vectors], d)
    if len(g_plus) * 2 != d or not is_invertible(columns(list(g_plus.vectors) + list(g_minus.vectors))):
        raise ValidationError("g_+ and J g_+ do not split g")
    for name, W in (("g_+", g_plus), ("J g_+", g_minus)):
        if not _subalgebra(L, W):
            raise ValidationError(f"{name} is not a subalgebra")

    brackets = {}
    for a, b in itertools.combinations(range(2 * d), 2):
        ra, ia = a % d, a >= d
        rb, ib = b % d, b >= d
        v = L.structure_vector(ra, rb)
        # (i x)(i y) = -[x, y]; mixed pairs land in the imaginary half
        if ia and ib:
            coeffs = {l: -v[l] for l in range(d)}
        elif ia or ib:
            coeffs = {d + l: v[l] for l in range(d)}
        else:
            coeffs = {l: v[l] for l in range(d)}
        coeffs = {l: c for l, c in coeffs.items() if not is_zero(c)}
        if coeffs:
            brackets[(a, b)] = coeffs
    hat = lie_algebra(2 * d, brackets, default_labels(2 * d))

    basis = columns(list(g_plus.vectors) + list(g_minus.vectors))
    sign = sp.diag(*([1] * len(g_plus) + [-1] * len(g_minus)))
    S = normalized(basis * sign * inverse(basis))
    zero = sp.zeros(d, d)
    J1 = normalized(sp.BlockMatrix([[zero, -S], [S, zero]]).as_explicit())
    J2 = normalized(sp.diag(J, J))
    triple = HypercomplexTriple(J1, J2, normalized(J1 * J2))
    report = validate_triple(hat, triple)
    if not report.passed:
        raise InternalConsistencyError(f"Realification triple fails {report.failing}")
    logger.info(f"Built hypercomplex double of dimension {2 * d}")
    return hat, triple


def triple_to_json(T):
    return {
        f"J{idx}": [[str(x) for x in J.row(r)] for r in range(J.rows)]
        for idx, J in enumerate(T, start=1)
    }

