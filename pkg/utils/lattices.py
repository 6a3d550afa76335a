# utils/lattices.py
"""Exact matrix exponentials and lattice certificates.

A certificate for G = R^k x_phi N lists commuting derivations B_j of n,
times t_j and a conjugator P. It passes when every P^-1 exp(t_j B_j) P is an
integer unimodular matrix and the basis f_i = P e_i has rational structure
constants.
"""

import itertools
import logging
from dataclasses import dataclass, field

import sympy as sp

from utils.constants import EXACT_ANGLE_DENOMINATORS
from utils.exceptions import (
    InternalConsistencyError,
    NotExactlyEvaluable,
    ScalarError,
    UnsupportedError,
    ValidationError,
)
from utils.lie_algebra import algebra_from_json, algebra_to_json, change_basis, is_derivation
from utils.linalg import (
    basis_vector,
    columns,
    determinant,
    identity,
    inverse,
    is_invertible,
    is_zero_matrix,
    matrices_equal,
    normalized,
)
from utils.scalars import (
    PI,
    format_scalar,
    is_integer,
    is_rational,
    is_zero,
    log_unit_of,
    log_unit_symbol,
    normalize,
    parse_scalar,
    unit_value,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TimeValue:
    """Exact time: q*pi, k*log(u) for a quadratic unit u, or a rational q."""

    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", normalize(self.value))
        if self.kind is None:
            raise ValidationError(f"Unsupported time value {format_scalar(self.value)}")

    @property
    def kind(self):
        if is_rational(self.value):
            return "rational"
        if is_rational(self.value / PI):
            return "pi"
        if self._log_part() is not None:
            return "log_unit"
        return None

    def _log_part(self):
        symbols = list(self.value.free_symbols)
        if len(symbols) != 1 or log_unit_of(symbols[0]) is None:
            return None
        k = normalize(self.value / symbols[0])
        if not is_rational(k):
            return None
        m, norm = log_unit_of(symbols[0])
        return m, norm, k

    def __add__(self, other):
        return TimeValue(self.value + other.value)

    def to_json(self):
        kind = self.kind
        if kind == "pi":
            return {"type": "pi", "q": format_scalar(self.value / PI)}
        if kind == "rational":
            return {"type": "rational", "q": format_scalar(self.value)}
        m, norm, k = self._log_part()
        data = {"type": "log_unit", "m": m}
        if norm != 1:
            data["norm"] = norm
        if k != 1:
            data["k"] = format_scalar(k)
        return data


def pi_time(q=1):
    return TimeValue(parse_scalar(q) * PI if isinstance(q, str) else normalize(q) * PI)


def unit_time(m, norm=1):
    """t_m = log((m+sqrt(m^2-4))/2), or s_m = log((m+sqrt(m^2+4))/2) for norm -1.

    Raises:
        ValidationError: If the unit is degenerate (m < 3 for norm 1, m < 1 for norm -1)
    """
    if norm == 1 and m < 3:
        raise ValidationError(f"Unit time needs m >= 3, got {m}")
    if norm == -1 and m < 1:
        raise ValidationError(f"Unit time needs m >= 1, got {m}")
    if norm not in (1, -1):
        raise ValidationError(f"Unit norm must be 1 or -1, got {norm}")
    u = unit_value(m, norm)
    # u + norm/u = m exactly
    if not is_zero(u + norm / u - m):
        raise InternalConsistencyError(f"Unit for m={m} fails u + {norm}/u = m")
    return TimeValue(log_unit_symbol(m, norm))


def time_from_json(data):
    """Inverse of TimeValue.to_json.

    Raises:
        ValidationError: Unknown time type or missing fields
    """
    try:
        kind = data["type"]
        if kind == "pi":
            return pi_time(str(data.get("q", "1")))
        if kind == "rational":
            return TimeValue(parse_scalar(str(data["q"])))
        if kind == "log_unit":
            base = unit_time(int(data["m"]), int(data.get("norm", 1)))
            return TimeValue(parse_scalar(str(data.get("k", "1"))) * base.value)
    except (KeyError, TypeError, ValueError, ScalarError) as e:
        raise ValidationError(f"Invalid time document {data}: {e}") from e
    raise ValidationError(f"Unknown time type {data.get('type')}")


@dataclass(frozen=True)
class StructuredDerivation:
    """D = N + S_r + S_theta with commuting parts.

    Attributes:
        dim (int): Size of the matrix
        nilpotent (ImmutableMatrix): N with N^dim = 0
        diagonal (tuple): Diagonal of S_r
        rotations (tuple): (i, j, theta) with e_i -> theta e_j and e_j -> -theta e_i
    """

    dim: int
    nilpotent: sp.ImmutableMatrix = None
    diagonal: tuple = ()
    rotations: tuple = field(default_factory=tuple)

    def __post_init__(self):
        n = self.dim
        nil = sp.ImmutableMatrix.zeros(n, n) if self.nilpotent is None else normalized(self.nilpotent)
        diag = tuple(normalize(x) for x in self.diagonal) if self.diagonal else (sp.Integer(0),) * n
        rots = tuple((int(i), int(j), normalize(theta)) for i, j, theta in self.rotations)
        object.__setattr__(self, "nilpotent", nil)
        object.__setattr__(self, "diagonal", diag)
        object.__setattr__(self, "rotations", rots)
        if nil.shape != (n, n) or len(diag) != n:
            raise ValidationError("Derivation parts have inconsistent sizes")
        if not is_zero_matrix(nil ** n):
            raise ValidationError("Nilpotent part is not nilpotent")
        used = [k for i, j, _ in rots for k in (i, j)]
        if len(set(used)) != len(used):
            raise ValidationError("Rotation blocks overlap", witness=tuple(used))
        for i, j, _ in rots:
            if not is_zero(diag[i] - diag[j]):
                raise ValidationError("Rotation block does not commute with the diagonal part", witness=(i, j))
        S_r, S_theta = self.diagonal_matrix, self.rotation_matrix
        for part in (S_r, S_theta):
            if not matrices_equal(nil * part, part * nil):
                raise ValidationError("Nilpotent part does not commute with the semisimple part")

    @property
    def diagonal_matrix(self):
        return sp.ImmutableMatrix(sp.diag(*self.diagonal))

    @property
    def rotation_matrix(self):
        m = sp.zeros(self.dim, self.dim)
        for i, j, theta in self.rotations:
            m[j, i] = theta
            m[i, j] = -theta
        return sp.ImmutableMatrix(m)

    @property
    def matrix(self):
        return normalized(self.nilpotent + self.diagonal_matrix + self.rotation_matrix)

    def trace(self):
        return normalize(sum(self.diagonal))

    def to_json(self):
        return {
            "dim": self.dim,
            "nilpotent": [[format_scalar(x) for x in self.nilpotent.row(r)] for r in range(self.dim)],
            "diagonal": [format_scalar(x) for x in self.diagonal],
            "rotations": [[i, j, format_scalar(theta)] for i, j, theta in self.rotations],
        }


def derivation_from_json(data):
    try:
        return StructuredDerivation(
            dim=int(data["dim"]),
            nilpotent=sp.ImmutableMatrix([[parse_scalar(str(x)) for x in row] for row in data["nilpotent"]]),
            diagonal=tuple(parse_scalar(str(x)) for x in data["diagonal"]),
            rotations=tuple((i, j, parse_scalar(str(theta))) for i, j, theta in data.get("rotations", [])),
        )
    except (KeyError, TypeError, ValueError, ScalarError) as e:
        raise ValidationError(f"Invalid derivation document: {e}") from e


def _exp_of_exponent(exponent, block):
    """exp(x) for x = 0 or x = k log(u) with integer k."""
    exponent = normalize(exponent)
    if is_zero(exponent):
        return sp.Integer(1)
    symbols = list(exponent.free_symbols)
    if len(symbols) == 1 and log_unit_of(symbols[0]) is not None:
        k = normalize(exponent / symbols[0])
        if is_integer(k):
            m, norm = log_unit_of(symbols[0])
            return normalize(unit_value(m, norm) ** int(k))
    raise NotExactlyEvaluable(f"exp({format_scalar(exponent)}) is not an exact unit power", block=block)


def _cos_sin(angle, block):
    ratio = normalize(angle / PI)
    if not is_rational(ratio) or ratio.q not in EXACT_ANGLE_DENOMINATORS:
        raise NotExactlyEvaluable(f"Rotation angle {format_scalar(angle)} has no exact cosine", block=block)
    return normalize(sp.cos(ratio * sp.pi)), normalize(sp.sin(ratio * sp.pi))


def exp_exact(D, t):
    """exp(t D) over the field of the time's unit.

    Args:
        D (StructuredDerivation): Derivation
        t (TimeValue): Exact time

    Returns:
        ImmutableMatrix: exp(t D)

    Raises:
        NotExactlyEvaluable: If a diagonal or rotation block has no exact value
        InternalConsistencyError: If det exp(tD) != exp(t Tr D)
    """
    tv = t.value
    n = D.dim
    semisimple = sp.zeros(n, n)
    factors = []
    for i, lam in enumerate(D.diagonal):
        value = _exp_of_exponent(lam * tv, block=i)
        factors.append(value)
        semisimple[i, i] = value
    for i, j, theta in D.rotations:
        c, s = _cos_sin(theta * tv, block=(i, j))
        scale = semisimple[i, i]
        semisimple[i, i], semisimple[j, j] = scale * c, scale * c
        semisimple[j, i], semisimple[i, j] = scale * s, -scale * s

    nil_exp = sp.zeros(n, n)
    power = sp.eye(n)
    for k in range(n):
        nil_exp += power * tv ** k / sp.factorial(k)
        power = power * D.nilpotent
        if is_zero_matrix(power):
            break
    result = normalized(sp.ImmutableMatrix(semisimple) * sp.ImmutableMatrix(nil_exp))

    expected = normalize(sp.Mul(*factors))
    if not is_zero(determinant(result) - expected):
        raise InternalConsistencyError("det exp(tD) differs from exp(t Tr D)")
    logger.debug(f"exp_exact at t={format_scalar(tv)} evaluated on {n}x{n} derivation")
    return result


@dataclass(frozen=True)
class Fixed:
    """Column e_i unchanged."""

    i: int

    def columns(self, E):
        return [basis_vector(E.rows, self.i)]


@dataclass(frozen=True)
class Pair:
    """Hyperbolic pair e_i, e_j with lambda = E_ii, mu = E_jj distinct.

    Columns p1 = e_i + e_j/(mu-lambda) and p2 = lambda e_i + mu/(mu-lambda) e_j.
    Only the diagonal entries are read: p2 equals E p1, and the block becomes
    [[0, -lambda mu], [1, lambda + mu]], when E e_i = lambda e_i and E e_j = mu e_j.
    """

    i: int
    j: int

    def columns(self, E):
        lam, mu = E[self.i, self.i], E[self.j, self.j]
        if is_zero(mu - lam):
            raise UnsupportedError(f"Pair ({self.i}, {self.j}) has a repeated eigenvalue")
        dim = E.rows
        p1 = normalized(basis_vector(dim, self.i) + basis_vector(dim, self.j) / (mu - lam))
        p2 = normalized(lam * basis_vector(dim, self.i) + mu / (mu - lam) * basis_vector(dim, self.j))
        return [p1, p2]


@dataclass(frozen=True)
class Shear:
    """Columns w = c1 e_i + c2 e_j, e_k / s, -(1/c1) e_j where E e_k = e_k + s w.

    The shift s is read off E, so the block becomes [[1, 1, 0], [0, 1, 0], [0, 0, 1]].
    """

    i: int
    j: int
    k: int
    c1: object
    c2: object

    def columns(self, E):
        c1, c2 = normalize(self.c1), normalize(self.c2)
        if is_zero(c1):
            raise UnsupportedError("Shear needs c1 != 0")
        shift = normalize(E[self.i, self.k] / c1)
        if is_zero(shift) or not is_zero(E[self.j, self.k] - shift * c2):
            raise UnsupportedError(f"E e_{self.k} - e_{self.k} is not a multiple of the shear direction")
        dim = E.rows
        first = normalized(c1 * basis_vector(dim, self.i) + c2 * basis_vector(dim, self.j))
        last = normalized(-basis_vector(dim, self.j) / c1)
        return [first, normalized(basis_vector(dim, self.k) / shift), last]


def hyperbolic_conjugator(blocks, E):
    """Assemble P from blocks, in block order.

    Args:
        blocks (list): Fixed, Pair and Shear blocks covering every index once
        E (ImmutableMatrix): The exponential to be conjugated

    Returns:
        ImmutableMatrix: Invertible P

    Raises:
        UnsupportedError: If the pattern does not give an invertible P
    """
    E = sp.ImmutableMatrix(E)
    cols = []
    for block in blocks:
        cols.extend(block.columns(E))
    if not blocks:
        return identity(E.rows)
    P = columns(cols, E.rows)
    if P.shape != E.shape or not is_invertible(P):
        raise UnsupportedError("Conjugator pattern does not give an invertible matrix")
    return P


@dataclass(frozen=True)
class LatticeCertificate:
    """Data for Gamma = span_Z{t_j} x exp(span_Z{P e_i}).

    Attributes:
        name (str): Label for reports
        n (LieAlgebra): Nilpotent ideal
        derivations (tuple): StructuredDerivation per direction t_j
        times (tuple): TimeValue per direction
        P (ImmutableMatrix): Conjugator
        claimed (tuple): Optional expected integer matrices E_j
    """

    name: str
    n: object
    derivations: tuple
    times: tuple
    P: sp.ImmutableMatrix
    claimed: tuple = None


@dataclass(frozen=True)
class CertificateReport:
    passed: bool
    failing: str = None
    witness: object = None
    conjugates: tuple = ()


def verify_certificate(cert):
    """Check the integer unimodular and rational-basis conditions exactly.

    Returns:
        CertificateReport: passed, or the first failing check with a witness

    Raises:
        NotExactlyEvaluable: If some exp(t_j B_j) cannot be evaluated exactly
    """
    if len(cert.derivations) != len(cert.times):
        raise ValidationError("Certificate needs one time per derivation")
    mats = [D.matrix for D in cert.derivations]
    for idx, B in enumerate(mats):
        ok, pair = is_derivation(cert.n, B)
        if not ok:
            return CertificateReport(False, "derivation", (idx, pair))
    for a, b in itertools.combinations(range(len(mats)), 2):
        if not matrices_equal(mats[a] * mats[b], mats[b] * mats[a]):
            return CertificateReport(False, "commuting", (a, b))
    P = sp.ImmutableMatrix(cert.P)
    if not is_invertible(P):
        return CertificateReport(False, "conjugator", "P is singular")
    P_inv = inverse(P)

    conjugates = []
    for idx, (D, t) in enumerate(zip(cert.derivations, cert.times)):
        C = normalized(P_inv * exp_exact(D, t) * P)
        for r, c in itertools.product(range(C.rows), range(C.cols)):
            if not is_integer(C[r, c]):
                return CertificateReport(False, "integrality", (idx, r, c), tuple(conjugates))
        if abs(determinant(C)) != 1:
            return CertificateReport(False, "unimodularity", idx, tuple(conjugates))
        if cert.claimed is not None and not matrices_equal(C, sp.ImmutableMatrix(cert.claimed[idx])):
            return CertificateReport(False, "claimed", idx, tuple(conjugates))
        conjugates.append(C)

    renamed = change_basis(cert.n, P)
    for (a, b), coeffs in sorted(renamed.brackets.items()):
        for l, c in coeffs.items():
            if not is_rational(c):
                return CertificateReport(False, "rational basis", (a, b, l), tuple(conjugates))
    logger.info(f"Certificate {cert.name} verified")
    return CertificateReport(True, conjugates=tuple(conjugates))


def _matrix_to_json(m):
    m = sp.ImmutableMatrix(m)
    return [[format_scalar(x) for x in m.row(r)] for r in range(m.rows)]


def _matrix_from_json(rows):
    return sp.ImmutableMatrix([[parse_scalar(str(x)) for x in row] for row in rows])


def certificate_to_json(cert):
    data = {
        "name": cert.name,
        "n": algebra_to_json(cert.n),
        "derivations": [D.to_json() for D in cert.derivations],
        "times": [t.to_json() for t in cert.times],
        "P": _matrix_to_json(cert.P),
    }
    if cert.claimed is not None:
        data["claimed"] = [_matrix_to_json(m) for m in cert.claimed]
    return data


def certificate_from_json(data):
    """Inverse of certificate_to_json.

    Raises:
        ValidationError: Missing fields or unreadable entries
    """
    try:
        claimed = data.get("claimed")
        return LatticeCertificate(
            name=data.get("name", "certificate"),
            n=algebra_from_json(data["n"]),
            derivations=tuple(derivation_from_json(d) for d in data["derivations"]),
            times=tuple(time_from_json(t) for t in data["times"]),
            P=_matrix_from_json(data["P"]),
            claimed=tuple(_matrix_from_json(m) for m in claimed) if claimed is not None else None,
        )
    except (KeyError, TypeError, ScalarError) as e:
        raise ValidationError(f"Invalid certificate document: {e}") from e
