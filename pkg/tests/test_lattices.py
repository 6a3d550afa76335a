# tests/test_lattices.py
import pytest
import sympy as sp

from utils.exceptions import NotExactlyEvaluable, ValidationError
from utils.lattices import (
    Fixed,
    LatticeCertificate,
    Pair,
    StructuredDerivation,
    TimeValue,
    certificate_from_json,
    certificate_to_json,
    exp_exact,
    hyperbolic_conjugator,
    pi_time,
    time_from_json,
    unit_time,
    verify_certificate,
)
from utils.lie_algebra import abelian
from utils.linalg import identity, inverse, matrices_equal, matrix
from utils.scalars import unit_value

ROTATION = StructuredDerivation(2, rotations=((0, 1, 1),))
HYPERBOLIC = StructuredDerivation(2, diagonal=(1, -1))


def test_quarter_turn():
    assert matrices_equal(exp_exact(ROTATION, pi_time("1/2")), matrix([[0, -1], [1, 0]]))


def test_third_turn_is_exact():
    E = exp_exact(ROTATION, pi_time("1/3"))
    assert E[0, 0] == sp.Rational(1, 2)
    assert E[1, 0] == sp.sqrt(3) / 2


@pytest.mark.parametrize(
    "D, t",
    [
        (ROTATION, pi_time("1/5")),
        (HYPERBOLIC, TimeValue(1)),
        (StructuredDerivation(2, diagonal=(sp.Rational(1, 2), sp.Rational(-1, 2))), unit_time(3)),
    ],
)
def test_inexact_exponentials(D, t):
    with pytest.raises(NotExactlyEvaluable):
        exp_exact(D, t)


def test_hyperbolic_exponential():
    u = unit_value(3)
    E = exp_exact(HYPERBOLIC, unit_time(3))
    assert matrices_equal(E, matrix([[u, 0], [0, 1 / u]]))


def test_pair_block_is_companion():
    E = exp_exact(HYPERBOLIC, unit_time(3))
    P = hyperbolic_conjugator([Pair(0, 1)], E)
    assert matrices_equal(inverse(P) * E * P, matrix([[0, -1], [1, 3]]))


def test_pair_columns_on_diagonal_block():
    # E = diag(2, 1, 3) on the pair (2, 0): lambda = 3, mu = 2
    E = matrix([[2, 0, 0], [0, 1, 0], [0, 0, 3]])
    p1, p2 = Pair(2, 0).columns(E)
    assert matrices_equal(p1, matrix([[-1], [0], [1]]))
    assert matrices_equal(p2, E * p1)
    P = hyperbolic_conjugator([Pair(2, 0), Fixed(1)], E)
    assert matrices_equal(inverse(P) * E * P, matrix([[0, -6, 0], [1, 5, 0], [0, 0, 1]]))


def test_nilpotent_exponential():
    N = sp.zeros(3, 3)
    N[1, 0], N[2, 1] = 1, 1
    D = StructuredDerivation(3, nilpotent=N)
    E = exp_exact(D, TimeValue(2))
    assert E == matrix([[1, 0, 0], [2, 1, 0], [2, 2, 1]])


@pytest.mark.parametrize(
    "kwargs",
    [
        {"nilpotent": sp.eye(2)},
        {"rotations": ((0, 1, 1), (1, 0, 2))},
        {"diagonal": (1, 2), "rotations": ((0, 1, 1),)},
        {"diagonal": (1,)},
    ],
)
def test_bad_derivations(kwargs):
    with pytest.raises(ValidationError):
        StructuredDerivation(2, **kwargs)


def test_time_kinds():
    assert pi_time(2).kind == "pi"
    assert TimeValue(sp.Rational(3, 2)).kind == "rational"
    assert unit_time(5).kind == "log_unit"
    assert unit_time(1, norm=-1).kind == "log_unit"
    with pytest.raises(ValidationError):
        TimeValue(sp.sqrt(2))
    with pytest.raises(ValidationError):
        unit_time(2)


def test_time_json():
    t = unit_time(4)
    assert time_from_json(t.to_json()).value == t.value
    with pytest.raises(ValidationError):
        time_from_json({"type": "week"})


def _certificate(**overrides):
    E = exp_exact(HYPERBOLIC, unit_time(3))
    data = dict(
        name="hyperbolic",
        n=abelian(2),
        derivations=(HYPERBOLIC,),
        times=(unit_time(3),),
        P=hyperbolic_conjugator([Pair(0, 1)], E),
    )
    data.update(overrides)
    return LatticeCertificate(**data)


def test_certificate_passes():
    report = verify_certificate(_certificate())
    assert report.passed
    assert matrices_equal(report.conjugates[0], matrix([[0, -1], [1, 3]]))


def test_claimed_matrix_checked():
    assert verify_certificate(_certificate(claimed=(matrix([[0, -1], [1, 3]]),))).passed
    report = verify_certificate(_certificate(claimed=(identity(2),)))
    assert report.failing == "claimed"


@pytest.mark.parametrize(
    "overrides, failing",
    [
        ({"P": sp.zeros(2, 2)}, "conjugator"),
        ({"P": identity(2)}, "integrality"),
        ({"derivations": (ROTATION,), "times": (pi_time("1/3"),), "P": identity(2)}, "integrality"),
        (
            {"derivations": (HYPERBOLIC, ROTATION), "times": (unit_time(3), pi_time(1))},
            "commuting",
        ),
    ],
)
def test_certificate_failures(overrides, failing):
    report = verify_certificate(_certificate(**overrides))
    assert not report.passed
    assert report.failing == failing


def test_certificate_derivation_failure(h3):
    D = StructuredDerivation(3, diagonal=(1, 0, 0))
    cert = LatticeCertificate("bad", h3, (D,), (pi_time(1),), identity(3))
    assert verify_certificate(cert).failing == "derivation"


def test_certificate_rational_basis(h3):
    D = StructuredDerivation(3)
    P = sp.ImmutableMatrix(sp.diag(sp.sqrt(2), 1, 1))
    cert = LatticeCertificate("irrational", h3, (D,), (pi_time(1),), P)
    assert verify_certificate(cert).failing == "rational basis"


def test_times_must_match_derivations():
    with pytest.raises(ValidationError):
        verify_certificate(_certificate(times=()))


def test_fixed_block():
    E = identity(3)
    P = hyperbolic_conjugator([Fixed(2), Fixed(0), Fixed(1)], E)
    assert P == matrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]])


def test_certificate_json_round_trip(catalog_instance):
    cert = catalog_instance("g1", m=4).certificates[0]
    again = certificate_from_json(certificate_to_json(cert))
    assert again.name == cert.name
    assert matrices_equal(again.P, cert.P)
    assert verify_certificate(again).passed


@pytest.mark.parametrize("m", range(3, 11))
def test_g1_certificates(catalog_instance, m):
    for cert in catalog_instance("g1", m=m).certificates:
        assert verify_certificate(cert).passed


@pytest.mark.parametrize(
    "D, t",
    [
        (ROTATION, pi_time("2/3")),
        (HYPERBOLIC, unit_time(4)),
        (StructuredDerivation(3, diagonal=(1, 1, -2)), unit_time(5)),
    ],
)
def test_traceless_exponential_has_unit_determinant(D, t):
    assert sp.simplify(exp_exact(D, t).det()) == 1


@pytest.mark.parametrize("s, t", [("1/2", "1"), ("1/3", "2/3"), ("1", "1")])
def test_exponential_is_a_homomorphism(s, t):
    total = sp.Rational(s) + sp.Rational(t)
    product = exp_exact(ROTATION, pi_time(s)) * exp_exact(ROTATION, pi_time(t))
    assert matrices_equal(exp_exact(ROTATION, pi_time(total)), product)
