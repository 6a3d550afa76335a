# components/catalog_entries.py
"""Example families with their complex structures, lattices and expected diagnostics.

Each builder returns a CatalogInstance. Expected values carry a provenance tag:
"published" for values stated with the example in the literature, "derived"
for values computed by hand from the brackets.
"""

import logging
from dataclasses import dataclass, field

import sympy as sp

from components.fp_builders import FP1Data, FP2Data, fp1_construct, fp2_construct
from components.salamon_parser import parse_salamon
from utils.complex_structures import complex_structure, pairs_structure
from utils.constants import (
    INVARIANCE_INVARIANT,
    INVARIANCE_TORSION,
    OBSTRUCTION_OBSTRUCTED,
    OBSTRUCTION_PSI_VANISHES,
    VERDICT_INVARIANT_TRIVIAL,
    VERDICT_NO_INVARIANT_SECTION,
)
from utils.exceptions import InternalConsistencyError, ValidationError
from utils.hypercomplex import realification_double
from utils.lattices import (
    Fixed,
    LatticeCertificate,
    Pair,
    Shear,
    StructuredDerivation,
    TimeValue,
    exp_exact,
    hyperbolic_conjugator,
    pi_time,
    unit_time,
)
from utils.lie_algebra import abelian, default_labels, is_isomorphism, lie_algebra, restrict_to_ideal, semidirect
from utils.linalg import SubspaceBasis, basis_vector, block_diagonal, columns, identity, matrices_equal, normalized
from utils.scalars import PI, is_integer, is_rational, is_zero, log_unit_symbol, normalize

logger = logging.getLogger(__name__)

PUBLISHED = "published"
DERIVED = "derived"


@dataclass(frozen=True)
class Param:
    """One catalog parameter; kind is "int", "scalar" or "scalars"."""

    name: str
    kind: str
    default: object
    description: str = ""


@dataclass(frozen=True)
class Expected:
    """Expected diagnostics for one complex structure.

    Attributes:
        psi (dict): Label -> psi(e) for every basis vector
        verdict (str): Invariant-triviality verdict
        obstruction (str): Compact-quotient obstruction status
        lam (object): lambda of the rank-one section, None when psi = 0
        invariance (tuple): (status, order) per period listed for the structure
        provenance (str): "published" or "derived"
    """

    psi: dict = None
    verdict: str = None
    obstruction: str = None
    lam: object = None
    invariance: tuple = ()
    provenance: str = PUBLISHED


@dataclass(frozen=True)
class Isomorphism:
    """phi: (source, source_J) -> (instance algebra, structures[target])."""

    source: object
    source_J: sp.ImmutableMatrix
    phi: sp.ImmutableMatrix
    target: str


@dataclass(frozen=True)
class CatalogInstance:
    """A built catalog entry.

    Attributes:
        name (str): Entry name
        params (dict): Normalized parameter values
        L (LieAlgebra): The algebra
        structures (dict): Name -> J
        expected (dict): Structure name -> Expected
        certificates (tuple): LatticeCertificate objects expected to pass
        periods (dict): Structure name -> ((coordinate label, period), ...)
        triple (HypercomplexTriple): Optional hypercomplex structure
        nilradical (SubspaceBasis): Optional nilradical candidate
        isomorphism (Isomorphism): Optional biholomorphism onto one structure
        salamon (tuple): Optional (shorthand text, index base) of the algebra
        construction (object): FP1Data or FP2Data the algebra was built from
    """

    name: str
    params: dict
    L: object
    structures: dict
    expected: dict
    certificates: tuple = ()
    periods: dict = field(default_factory=dict)
    triple: object = None
    nilradical: object = None
    isomorphism: Isomorphism = None
    salamon: tuple = None
    construction: object = None


def _psi(labels, **nonzero):
    return {lbl: normalize(nonzero.get(lbl, 0)) for lbl in labels}


def _basis_subspace(dim, indices):
    return SubspaceBasis(dim, tuple(basis_vector(dim, i) for i in indices))


def _ideal(L, indices):
    """Structure constants of the span of some basis vectors, keeping their labels."""
    n = restrict_to_ideal(L, _basis_subspace(L.dim, indices))
    return n.with_labels([L.labels[i] for i in indices])


def _check_ad(L, t_index, indices, D):
    """ad e_t restricted to the ideal must equal the certificate derivation."""
    ad_t = L.ad(basis_vector(L.dim, t_index))
    restricted = ad_t.extract(list(indices), list(indices))
    if not matrices_equal(restricted, D.matrix):
        raise InternalConsistencyError(f"Certificate derivation differs from ad {L.labels[t_index]}")


def _companion(m):
    return sp.Matrix([[0, -1], [1, m]])


def _lattice_angle(a):
    """exp(a R) is an integer matrix iff a lies in (pi/2) Z."""
    return is_integer(normalize(2 * a / PI))


def _check_angles(angles):
    if not angles:
        raise ValidationError("At least one rotation angle is required")
    if not is_zero(sum(angles)):
        raise ValidationError("Rotation angles must sum to zero", witness="sum a_j = 0")
    for idx, a in enumerate(angles):
        if not _lattice_angle(a):
            raise ValidationError(f"Angle a_{idx + 1} is not a multiple of pi/2", witness=idx)


def _check_m(m, minimum=3):
    if m < minimum:
        raise ValidationError(f"Lattice parameter m must be at least {minimum}, got {m}")


KODAIRA_SALAMON = "(0, e^{02}, -e^{01}, -e^{12})"


def kodaira():
    """Primary Kodaira surface: R x_rot H_3 with Je0 = e3, Je1 = e2."""
    labels = default_labels(4, start=0)
    L = parse_salamon(KODAIRA_SALAMON, labels=labels, index_base=0)
    J = pairs_structure(4, [(0, 3), (1, 2)])
    n = _ideal(L, [1, 2, 3])
    D = StructuredDerivation(3, rotations=((0, 1, 1),))
    _check_ad(L, 0, [1, 2, 3], D)
    certificates = (
        LatticeCertificate("kodaira:2pi", n, (D,), (pi_time(2),), identity(3), claimed=(identity(3),)),
        LatticeCertificate(
            "kodaira:pi", n, (D,), (pi_time(1),), identity(3),
            claimed=(sp.ImmutableMatrix(sp.diag(-1, -1, 1)),),
        ),
    )
    expected = Expected(
        psi=_psi(labels, e0=-2),
        verdict=VERDICT_NO_INVARIANT_SECTION,
        obstruction=OBSTRUCTION_PSI_VANISHES,
        lam=1,
        invariance=((INVARIANCE_INVARIANT, 1), (INVARIANCE_TORSION, 2)),
    )
    return CatalogInstance(
        name="kodaira",
        params={},
        L=L,
        structures={"J": J},
        expected={"J": expected},
        certificates=certificates,
        periods={"J": (("e0", 2 * PI), ("e0", PI))},
        nilradical=_basis_subspace(4, [1, 2, 3]),
        salamon=(KODAIRA_SALAMON, 0),
    )


def inoue_s0(b=1):
    """Inoue surface of type S_0: [e0,e1] = e1, [e0,e2] = -1/2 e2 + b e3, [e0,e3] = -b e2 - 1/2 e3."""
    b = normalize(b)
    half = sp.Rational(1, 2)
    labels = default_labels(4, start=0)
    L = lie_algebra(4, {(0, 1): {1: 1}, (0, 2): {2: -half, 3: b}, (0, 3): {2: -b, 3: -half}}, labels)
    J = pairs_structure(4, [(0, 1), (2, 3)])
    expected = Expected(
        psi=_psi(labels, e0=-2 * b, e1=1),
        verdict=VERDICT_NO_INVARIANT_SECTION,
        obstruction=OBSTRUCTION_OBSTRUCTED,
        provenance=DERIVED,
    )
    return CatalogInstance("inoue_s0", {"b": b}, L, {"J": J}, {"J": expected})


G1_SALAMON = "(e^{15},-e^{25},-e^{35},e^{45},0,0)"


def g1(m=3):
    """Almost abelian g_1 with Je1 = e4, Je2 = e3, Je6 = e5 and the t_m lattice."""
    _check_m(m)
    L = parse_salamon(G1_SALAMON)
    J = pairs_structure(6, [(0, 3), (1, 2), (5, 4)])
    indices = [0, 1, 2, 3, 5]
    n = _ideal(L, indices)
    D = StructuredDerivation(5, diagonal=(1, -1, -1, 1, 0))
    _check_ad(L, 4, indices, D)
    t = unit_time(m)
    P = hyperbolic_conjugator([Pair(0, 1), Pair(3, 2), Fixed(4)], exp_exact(D, t))
    claimed = block_diagonal(_companion(m), _companion(m), sp.Matrix([[1]]))
    cert = LatticeCertificate(f"g1:m={m}", n, (D,), (t,), P, claimed=(claimed,))
    expected = Expected(
        psi=_psi(L.labels),
        verdict=VERDICT_INVARIANT_TRIVIAL,
        obstruction=OBSTRUCTION_PSI_VANISHES,
        provenance=DERIVED,
    )
    return CatalogInstance(
        "g1", {"m": m}, L, {"J": J}, {"J": expected},
        certificates=(cert,),
        nilradical=_basis_subspace(6, indices),
        salamon=(G1_SALAMON, 1),
    )


G2_SALAMON = (
    "(alpha*e^{15}+e^{25},-e^{15}+alpha*e^{25},-alpha*e^{35}+e^{45},-e^{35}-alpha*e^{45},0,0)"
)


def g2_alpha(alpha=0):
    """g_2^alpha with the structure Je1 = e2, Je4 = e3, Je6 = e5 (Tr(J_1 A) = 0). No lattice is built."""
    alpha = normalize(alpha)
    L = parse_salamon(G2_SALAMON, params={"alpha": alpha})
    J = pairs_structure(6, [(0, 1), (3, 2), (5, 4)])
    expected = Expected(
        psi=_psi(L.labels),
        verdict=VERDICT_INVARIANT_TRIVIAL,
        obstruction=OBSTRUCTION_PSI_VANISHES,
        provenance=DERIVED,
    )
    return CatalogInstance(
        "g2_alpha", {"alpha": alpha}, L, {"J": J}, {"J": expected},
        salamon=(G2_SALAMON, 1),
    )


def _s_blocks_certificate(name, n, blocks, m):
    """(pi Z + t_m Z) x P Z^{4n} for A = (R(1) + R(-1))^n and B = diag(1, 1, -1, -1)^n."""
    D_A = StructuredDerivation(
        4 * blocks,
        rotations=tuple(r for k in range(blocks) for r in ((4 * k, 4 * k + 1, 1), (4 * k + 2, 4 * k + 3, -1))),
    )
    D_B = StructuredDerivation(4 * blocks, diagonal=(1, 1, -1, -1) * blocks)
    t = unit_time(m)
    pairs = []
    for k in range(blocks):
        pairs.extend([Pair(4 * k, 4 * k + 2), Pair(4 * k + 1, 4 * k + 3)])
    P = hyperbolic_conjugator(pairs, exp_exact(D_B, t))
    claimed = (
        -identity(4 * blocks),
        block_diagonal(*([_companion(m)] * (2 * blocks))),
    )
    return LatticeCertificate(name, n, (D_A, D_B), (pi_time(1), t), P, claimed=claimed), D_A, D_B


NAKAMURA_SALAMON = "(e^{16}-e^{25},e^{15}+e^{26},-e^{36}+e^{45},-e^{35}-e^{46},0,0)"


def _nakamura_certificate(L, m, name):
    indices = [0, 1, 2, 3]
    cert, D_A, D_B = _s_blocks_certificate(name, _ideal(L, indices), 1, m)
    _check_ad(L, 4, indices, D_A)
    _check_ad(L, 5, indices, D_B)
    return cert


def nakamura_s(m=3):
    """Nakamura algebra s with its abelian J and the bi-invariant J~ (J~ e5 = -e6)."""
    _check_m(m)
    L = parse_salamon(NAKAMURA_SALAMON)
    J = pairs_structure(6, [(0, 1), (2, 3), (4, 5)])
    J_tilde = pairs_structure(6, [(0, 1), (2, 3), (4, 5, -1)])
    trivial = Expected(
        psi=_psi(L.labels), verdict=VERDICT_INVARIANT_TRIVIAL, obstruction=OBSTRUCTION_PSI_VANISHES
    )
    return CatalogInstance(
        "nakamura_s", {"m": m}, L,
        {"J": J, "J_tilde": J_tilde},
        {"J": trivial, "J_tilde": trivial},
        certificates=(_nakamura_certificate(L, m, f"nakamura_s:m={m}"),),
        nilradical=_basis_subspace(6, [0, 1, 2, 3]),
        salamon=(NAKAMURA_SALAMON, 1),
    )


def s_n(n=1, m=3):
    """s_n = R^2 x R^{4n} on f1, f2, e1, ..., e_4n with abelian J and bi-invariant J~."""
    if n < 1:
        raise ValidationError(f"s_n needs n >= 1, got {n}")
    _check_m(m)
    k = 4 * n
    rot = block_diagonal(*([sp.Matrix([[0, -1], [1, 0]]), sp.Matrix([[0, 1], [-1, 0]])] * n))
    diag = sp.diag(*((1, 1, -1, -1) * n))
    labels = ("f1", "f2") + default_labels(k)
    L = semidirect(2, abelian(k), [rot, diag], labels=labels)
    pairs = [(2 + 2 * j, 3 + 2 * j) for j in range(2 * n)]
    J = pairs_structure(k + 2, [(0, 1)] + pairs)
    J_tilde = pairs_structure(k + 2, [(0, 1, -1)] + pairs)
    indices = list(range(2, k + 2))
    cert, D_A, D_B = _s_blocks_certificate(f"s_n:n={n},m={m}", _ideal(L, indices), n, m)
    _check_ad(L, 0, indices, D_A)
    _check_ad(L, 1, indices, D_B)
    trivial = Expected(
        psi=_psi(labels), verdict=VERDICT_INVARIANT_TRIVIAL, obstruction=OBSTRUCTION_PSI_VANISHES
    )
    return CatalogInstance(
        "s_n", {"n": n, "m": m}, L,
        {"J": J, "J_tilde": J_tilde},
        {"J": trivial, "J_tilde": trivial},
        certificates=(cert,),
        nilradical=_basis_subspace(k + 2, indices),
    )


def _standard_pairs(size):
    m = sp.zeros(size, size)
    for p in range(0, size, 2):
        m[p + 1, p] = 1
        m[p, p + 1] = -1
    return sp.ImmutableMatrix(m)


def _pairing(size, pairs):
    eta = sp.zeros(size, size)
    for i, j in pairs:
        eta[i, j], eta[j, i] = 1, -1
    return sp.ImmutableMatrix(eta)


def _rotation_blocks(angles):
    return block_diagonal(*[sp.Matrix([[0, -a], [a, 0]]) for a in angles])


def _trivial_expected(labels, provenance=PUBLISHED):
    return Expected(
        psi=_psi(labels), verdict=VERDICT_INVARIANT_TRIVIAL,
        obstruction=OBSTRUCTION_PSI_VANISHES, provenance=provenance,
    )


def an1_i(n=1, m=3):
    """R e_{4n+2} x h_{4n+1} with B = 0 + I_2n + (-I_2n) and eta = e^{2,2n+2} + ... ."""
    if n < 1:
        raise ValidationError(f"an1_i needs n >= 1, got {n}")
    _check_m(m)
    k = 4 * n
    data = FP1Data(
        n=2 * n + 1,
        a=0,
        A=sp.ImmutableMatrix(sp.diag(*([1] * (2 * n) + [-1] * (2 * n)))),
        eta=_pairing(k, [(i, 2 * n + i) for i in range(2 * n)]),
        J1=_standard_pairs(k),
    )
    L, J = fp1_construct(data)
    indices = list(range(k + 1))
    D = StructuredDerivation(k + 1, diagonal=(0,) + (1,) * (2 * n) + (-1,) * (2 * n))
    _check_ad(L, k + 1, indices, D)
    t = unit_time(m)
    blocks = [Fixed(0)] + [Pair(1 + i, 2 * n + 1 + i) for i in range(2 * n)]
    P = hyperbolic_conjugator(blocks, exp_exact(D, t))
    claimed = block_diagonal(sp.Matrix([[1]]), *([_companion(m)] * (2 * n)))
    cert = LatticeCertificate(f"an1_i:n={n},m={m}", _ideal(L, indices), (D,), (t,), P, claimed=(claimed,))
    return CatalogInstance(
        "an1_i", {"n": n, "m": m}, L, {"J": J}, {"J": _trivial_expected(L.labels)},
        certificates=(cert,),
        nilradical=_basis_subspace(L.dim, indices),
        construction=data,
    )


def an1_ii(a=(PI, -PI)):
    """R e_{2n+2} x h_{2n+1} with B = (0) + rotation blocks a_j, sum a_j = 0; lattice at t = 1."""
    angles = tuple(normalize(x) for x in a)
    _check_angles(angles)
    n = len(angles)
    k = 2 * n
    data = FP1Data(
        n=n + 1,
        a=0,
        A=sp.ImmutableMatrix(_rotation_blocks(angles)),
        eta=_pairing(k, [(2 * j, 2 * j + 1) for j in range(n)]),
        J1=_standard_pairs(k),
    )
    L, J = fp1_construct(data)
    indices = list(range(k + 1))
    D = StructuredDerivation(k + 1, rotations=tuple((1 + 2 * j, 2 + 2 * j, angles[j]) for j in range(n)))
    _check_ad(L, k + 1, indices, D)
    t = TimeValue(1)
    P = hyperbolic_conjugator([Fixed(i) for i in indices], exp_exact(D, t))
    cert = LatticeCertificate(f"an1_ii:a={list(map(str, angles))}", _ideal(L, indices), (D,), (t,), P)
    return CatalogInstance(
        "an1_ii", {"a": angles}, L, {"J": J}, {"J": _trivial_expected(L.labels)},
        certificates=(cert,),
        construction=data,
    )


def _check_shear(v1, v2):
    if is_zero(v1) or is_zero(v2) or not (is_rational(v1) and is_rational(v2)):
        raise ValidationError("Shear parameters v1 and v2 must be nonzero rationals", witness=(v1, v2))


def an2_i(n=2, v1=1, v2=1, m=3):
    """R e_4n x h_{4n-1} with e_{4n-1} -> v1 e1 + v2 e2 and k_2 blocks I, -I."""
    if n < 2:
        raise ValidationError(f"an2_i needs n >= 2, got {n}")
    _check_m(m)
    v1, v2 = normalize(v1), normalize(v2)
    _check_shear(v1, v2)
    k = 4 * n - 4
    half = 2 * n - 2
    zeros = (0,) * k
    data = FP2Data(
        a=0, a1=0, a2=0,
        A=sp.ImmutableMatrix(sp.diag(*([1] * half + [-1] * half))),
        v1=v1, v2=v2,
        alpha=zeros, gamma=zeros, v=zeros,
        xi=_pairing(k, [(i, half + i) for i in range(half)]),
        J=_standard_pairs(k),
    )
    L, J = fp2_construct(data)
    last = 4 * n - 2
    indices = list(range(last + 1))
    N = sp.zeros(last + 1, last + 1)
    N[0, last], N[1, last] = v1, v2
    D = StructuredDerivation(last + 1, nilpotent=N, diagonal=(0, 0) + (1,) * half + (-1,) * half + (0,))
    _check_ad(L, last + 1, indices, D)
    t = unit_time(m)
    blocks = [Shear(0, 1, last, v1, v2)] + [Pair(2 + i, 2 + half + i) for i in range(half)]
    P = hyperbolic_conjugator(blocks, exp_exact(D, t))
    shear_block = sp.Matrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    claimed = block_diagonal(shear_block, *([_companion(m)] * half))
    cert = LatticeCertificate(f"an2_i:n={n},m={m}", _ideal(L, indices), (D,), (t,), P, claimed=(claimed,))
    return CatalogInstance(
        "an2_i", {"n": n, "v1": v1, "v2": v2, "m": m}, L, {"J": J}, {"J": _trivial_expected(L.labels)},
        certificates=(cert,),
        nilradical=_basis_subspace(L.dim, indices),
        construction=data,
    )


def an2_ii(a=(PI, -PI), v1=1, v2=1):
    """AN-2 with l rotation blocks a_i on k_2 (dimension 2l + 4), sum a_i = 0; lattice at t = 1."""
    angles = tuple(normalize(x) for x in a)
    _check_angles(angles)
    v1, v2 = normalize(v1), normalize(v2)
    _check_shear(v1, v2)
    k = 2 * len(angles)
    zeros = (0,) * k
    data = FP2Data(
        a=0, a1=0, a2=0,
        A=sp.ImmutableMatrix(_rotation_blocks(angles)),
        v1=v1, v2=v2,
        alpha=zeros, gamma=zeros, v=zeros,
        xi=_pairing(k, [(2 * j, 2 * j + 1) for j in range(len(angles))]),
        J=_standard_pairs(k),
    )
    L, J = fp2_construct(data)
    last = k + 2
    indices = list(range(last + 1))
    N = sp.zeros(last + 1, last + 1)
    N[0, last], N[1, last] = v1, v2
    D = StructuredDerivation(
        last + 1, nilpotent=N,
        rotations=tuple((2 + 2 * j, 3 + 2 * j, angles[j]) for j in range(len(angles))),
    )
    _check_ad(L, last + 1, indices, D)
    t = TimeValue(1)
    blocks = [Shear(0, 1, last, v1, v2)] + [Fixed(i) for i in range(2, last)]
    P = hyperbolic_conjugator(blocks, exp_exact(D, t))
    cert = LatticeCertificate(f"an2_ii:a={list(map(str, angles))}", _ideal(L, indices), (D,), (t,), P)
    return CatalogInstance(
        "an2_ii", {"a": angles, "v1": v1, "v2": v2}, L, {"J": J}, {"J": _trivial_expected(L.labels)},
        certificates=(cert,),
        construction=data,
    )


def g_p(m=3):
    """g_p = R e6 x_{A_p} R^5 with p = s_m / pi, so exp(pi A_p) is conjugate to E_m."""
    _check_m(m, minimum=1)
    s_m = log_unit_symbol(m, norm=-1)
    p = normalize(s_m / PI)
    A = sp.Matrix([
        [-p, -1, 0, 0, 0],
        [1, -p, 0, 0, 0],
        [0, 0, p, 2, 0],
        [0, 0, -2, p, 0],
        [0, 0, 0, 0, 0],
    ])
    L = semidirect(1, abelian(5), [A], labels=default_labels(6), t_last=True)
    J = pairs_structure(6, [(0, 1), (2, 3), (4, 5)])
    indices = [0, 1, 2, 3, 4]
    D = StructuredDerivation(5, diagonal=(-p, -p, p, p, 0), rotations=((0, 1, 1), (2, 3, -2)))
    _check_ad(L, 5, indices, D)
    t = pi_time(1)
    P = hyperbolic_conjugator([Pair(0, 2), Pair(1, 3), Fixed(4)], exp_exact(D, t))
    target = sp.Matrix([[0, 1], [1, m]])
    claimed = block_diagonal(target, target, sp.Matrix([[1]]))
    cert = LatticeCertificate(f"g_p:m={m}", _ideal(L, indices), (D,), (t,), P, claimed=(claimed,))
    expected = Expected(
        psi=_psi(L.labels, e6=2),
        verdict=VERDICT_NO_INVARIANT_SECTION,
        obstruction=OBSTRUCTION_PSI_VANISHES,
        lam=-1,
        invariance=((INVARIANCE_TORSION, 2),),
    )
    return CatalogInstance(
        "g_p", {"m": m}, L, {"J": J}, {"J": expected},
        certificates=(cert,),
        periods={"J": (("e6", PI),)},
        nilradical=_basis_subspace(6, indices),
    )


S644_SALAMON = "(e^{23},e^{36},-e^{26},e^{26}+e^{56},e^{36}-e^{46},0)"


def s_6_44():
    """s_{6.44} = R e6 x (h_3 + R^2) with Je1 = e6, Je2 = e3, Je4 = e5 and the f-basis lattice."""
    L = parse_salamon(S644_SALAMON)
    J = pairs_structure(6, [(0, 5), (1, 2), (3, 4)])
    indices = [0, 1, 2, 3, 4]
    N = sp.zeros(5, 5)
    N[3, 1], N[4, 2] = 1, 1
    D = StructuredDerivation(5, nilpotent=N, rotations=((1, 2, -1), (3, 4, -1)))
    _check_ad(L, 5, indices, D)
    e = [basis_vector(5, i) for i in range(5)]
    P = columns([e[0], -PI * e[4], e[2], -PI * e[3], e[1] - e[4]])
    shear = sp.Matrix([[-1, 1], [0, -1]])
    claimed = block_diagonal(sp.Matrix([[1]]), shear, shear)
    cert = LatticeCertificate("s_6_44", _ideal(L, indices), (D,), (pi_time(1),), normalized(P), claimed=(claimed,))
    expected = Expected(
        psi=_psi(L.labels, e6=4),
        verdict=VERDICT_NO_INVARIANT_SECTION,
        obstruction=OBSTRUCTION_PSI_VANISHES,
        lam=-2,
        invariance=((INVARIANCE_INVARIANT, 1),),
    )
    return CatalogInstance(
        "s_6_44", {}, L, {"J": J}, {"J": expected},
        certificates=(cert,),
        periods={"J": (("e6", PI),)},
        nilradical=_basis_subspace(6, indices),
        salamon=(S644_SALAMON, 1),
    )


def _splitting_source(r, s):
    """(g, J_B) from the real form of d omega^1 = -omega^13 + B omega^1{3bar}, B = r + is."""
    brackets = {
        (0, 4): {0: 1 - r, 1: -s},
        (0, 5): {0: -s, 1: r + 1},
        (1, 4): {0: s, 1: 1 - r},
        (1, 5): {0: -(r + 1), 1: -s},
        (2, 4): {2: r - 1, 3: -s},
        (2, 5): {2: s, 3: r + 1},
        (3, 4): {2: s, 3: r - 1},
        (3, 5): {2: -(r + 1), 3: s},
    }
    L = lie_algebra(6, brackets, default_labels(6))
    return L, pairs_structure(6, [(0, 1), (2, 3), (4, 5)])


def nakamura_splitting_JB(r=0, s=0, m=3):
    """Splitting-type structure J_B on the Nakamura algebra, moved to s by phi."""
    r, s = normalize(r), normalize(s)
    if not (r * r + s * s - 1).is_negative:
        raise ValidationError("Splitting parameter B = r + is needs |B| < 1", witness=(r, s))
    _check_m(m)
    f_labels = tuple(f"f{i + 1}" for i in range(6))
    target = parse_salamon(NAKAMURA_SALAMON, labels=f_labels)
    d = normalize(r * r + s * s - 1)
    images = {
        0: {1: -1},
        1: {0: 1},
        2: {3: 1},
        3: {2: -1},
        4: {4: -2 * s / d, 5: (r * r + s * s - 2 * r + 1) / d},
        5: {4: -(r * r + s * s + 2 * r + 1) / d, 5: 2 * s / d},
    }
    J_tilde = complex_structure(6, images)
    source, J_B = _splitting_source(r, s)
    phi = block_diagonal(
        sp.Matrix([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]),
        sp.Matrix([[-s, r + 1], [1 - r, -s]]),
    )
    ok, witness = is_isomorphism(source, target, phi)
    if not ok or not matrices_equal(phi * J_B, J_tilde * phi):
        raise InternalConsistencyError(f"phi is not a biholomorphic isomorphism at {witness}")
    expected = Expected(
        psi=_psi(f_labels, f5=4),
        verdict=VERDICT_NO_INVARIANT_SECTION,
        obstruction=OBSTRUCTION_PSI_VANISHES,
        lam=-2,
        invariance=((INVARIANCE_INVARIANT, 1),),
    )
    logger.debug(f"Splitting structure built for B = {r} + {s}i")
    return CatalogInstance(
        "nakamura_splitting_JB", {"r": r, "s": s, "m": m}, target,
        {"J_B_tilde": J_tilde},
        {"J_B_tilde": expected},
        certificates=(_nakamura_certificate(target, m, f"nakamura_splitting:m={m}"),),
        periods={"J_B_tilde": (("f5", PI),)},
        nilradical=_basis_subspace(6, [0, 1, 2, 3]),
        isomorphism=Isomorphism(source, J_B, sp.ImmutableMatrix(phi), "J_B_tilde"),
        salamon=(NAKAMURA_SALAMON, 1),
    )


def hypercomplex_ghat(m=3):
    """Realification of g = <e1..e4> ([e2,e3] = e1, [e2,e4] = e2, [e3,e4] = -e3) with g_+ = <e1, e3>."""
    _check_m(m)
    base = lie_algebra(4, {(1, 2): {0: 1}, (1, 3): {1: 1}, (2, 3): {2: -1}}, default_labels(4))
    J = pairs_structure(4, [(0, 1), (2, 3)])
    g_plus = _basis_subspace(4, [0, 2])
    L, triple = realification_double(base, J, g_plus)
    indices = [0, 1, 2, 4, 5, 6]
    D8 = StructuredDerivation(6, rotations=((1, 4, -1), (2, 5, 1)))
    D4 = StructuredDerivation(6, diagonal=(0, -1, 1, 0, -1, 1))
    _check_ad(L, 7, indices, D8)
    _check_ad(L, 3, indices, D4)
    t = unit_time(m)
    P = hyperbolic_conjugator([Fixed(0), Pair(1, 2), Fixed(3), Pair(4, 5)], exp_exact(D4, t))
    B_block = sp.Matrix([[1, 0, 0], [0, 0, -1], [0, 1, m]])
    claimed = (sp.ImmutableMatrix(sp.diag(1, -1, -1, 1, -1, -1)), block_diagonal(B_block, B_block))
    cert = LatticeCertificate(f"ghat:m={m}", _ideal(L, indices), (D8, D4), (pi_time(1), t), P, claimed=claimed)
    labels = L.labels
    expected = {
        "J1": Expected(
            psi=_psi(labels, e8=-4),
            verdict=VERDICT_NO_INVARIANT_SECTION,
            obstruction=OBSTRUCTION_PSI_VANISHES,
            lam=2,
            invariance=((INVARIANCE_INVARIANT, 1),),
        ),
        "J2": Expected(psi=_psi(labels, e3=-4), verdict=VERDICT_NO_INVARIANT_SECTION,
                       obstruction=OBSTRUCTION_OBSTRUCTED),
        "J3": Expected(psi=_psi(labels, e7=-4), verdict=VERDICT_NO_INVARIANT_SECTION,
                       obstruction=OBSTRUCTION_OBSTRUCTED),
    }
    return CatalogInstance(
        "hypercomplex_ghat", {"m": m}, L,
        {"J1": triple.J1, "J2": triple.J2, "J3": triple.J3},
        expected,
        certificates=(cert,),
        periods={"J1": (("e8", PI),)},
        triple=triple,
        nilradical=_basis_subspace(8, indices),
    )
