# tests/test_catalog.py
import pytest

from components.catalog import (
    ENTRIES,
    build,
    get_entry,
    has_param,
    instance_to_json,
    list_entries,
    run_catalog,
    run_entry,
)
from utils.complex_structures import decide_invariant_trivial, is_abelian_cs, is_bi_invariant
from utils.constants import INVARIANCE_INVARIANT, INVARIANCE_TORSION, VERDICT_INVARIANT_TRIVIAL
from utils.exceptions import ValidationError
from utils.lattices import verify_certificate


@pytest.mark.parametrize("name", [e.name for e in ENTRIES])
def test_entry_matches_expected(name):
    result = run_entry(name)
    assert result.error is None
    mismatches = [f"{c.structure}:{c.field} {c.expected} != {c.actual}" for c in result.checks if not c.matched]
    assert mismatches == []
    assert result.matched


@pytest.mark.parametrize(
    "name", ["nakamura_s", "s_n", "an1_i", "an2_i", "g_p", "nakamura_splitting_JB", "hypercomplex_ghat"]
)
@pytest.mark.parametrize("m", [3, 4, 7, 10])
def test_certificates_for_m(catalog_instance, name, m):
    inst = catalog_instance(name, m=m)
    assert inst.certificates
    for cert in inst.certificates:
        report = verify_certificate(cert)
        assert report.passed, report.failing


def test_list_entries():
    entries = list_entries()
    assert [e["name"] for e in entries] == [e.name for e in ENTRIES]
    g1 = next(e for e in entries if e["name"] == "g1")
    assert g1["params"] == [
        {"name": "m", "kind": "int", "default": 3, "description": g1["params"][0]["description"]}
    ]
    an1_ii = next(e for e in entries if e["name"] == "an1_ii")
    assert an1_ii["params"][0]["default"] == ["π", "-π"]


def test_alias():
    assert get_entry("nakamura_s_n").name == "s_n"
    assert has_param("nakamura_s_n", "m")
    assert not has_param("kodaira", "m")


@pytest.mark.parametrize(
    "name, params",
    [
        ("no_such_entry", {}),
        ("g1", {"k": 1}),
        ("g1", {"m": 2}),
        ("g1", {"m": "three"}),
        ("s_n", {"n": 0}),
        ("nakamura_splitting_JB", {"r": 1}),
        ("nakamura_splitting_JB", {"r": "3/5", "s": "4/5"}),
        ("an1_ii", {"a": "pi,pi"}),
        ("an1_ii", {"a": "pi/3,-pi/3"}),
        ("an2_i", {"v1": 0}),
        ("an2_i", {"n": 1}),
    ],
)
def test_invalid_parameters(name, params):
    with pytest.raises(ValidationError):
        build(name, params)


def test_run_entry_records_build_errors():
    result = run_entry("g1", {"m": 2})
    assert result.error.startswith("ValidationError")
    assert not result.matched
    assert result.report is None


@pytest.mark.parametrize(
    "name, structure, label, value",
    [
        ("kodaira", "J", "e0", "-2"),
        ("g_p", "J", "e6", "2"),
        ("s_6_44", "J", "e6", "4"),
        ("nakamura_splitting_JB", "J_B_tilde", "f5", "4"),
        ("hypercomplex_ghat", "J1", "e8", "-4"),
        ("inoue_s0", "J", "e1", "1"),
    ],
)
def test_psi_in_report(name, structure, label, value):
    report = run_entry(name).report
    assert report["stages"]["complex"]["structures"][structure]["psi"][label] == value


@pytest.mark.parametrize(
    "name, structure, lam",
    [("kodaira", "J", "1"), ("g_p", "J", "-1"), ("s_6_44", "J", "-2"), ("hypercomplex_ghat", "J1", "2")],
)
def test_lambda_in_report(name, structure, lam):
    report = run_entry(name).report
    assert report["stages"]["section"]["structures"][structure]["lambda"] == lam


@pytest.mark.parametrize("n", [1, 2, 3])
def test_generalized_nakamura(catalog_instance, n):
    inst = catalog_instance("s_n", n=n)
    assert inst.L.dim == 4 * n + 2
    J, J_tilde = inst.structures["J"], inst.structures["J_tilde"]
    assert is_abelian_cs(inst.L, J)
    assert is_bi_invariant(inst.L, J_tilde)
    for structure in (J, J_tilde):
        assert decide_invariant_trivial(inst.L, structure).verdict == VERDICT_INVARIANT_TRIVIAL


def test_splitting_structure_is_moved_by_an_isomorphism(catalog_instance):
    inst = catalog_instance("nakamura_splitting_JB", r="1/2", s="-1/3")
    assert inst.isomorphism.target == "J_B_tilde"
    result = run_entry("nakamura_splitting_JB", {"r": "1/2", "s": "-1/3"})
    assert result.matched
    assert {c.field for c in result.checks} >= {"phi is an isomorphism", "phi J = J' phi"}


def test_run_catalog_repeats_m():
    results = run_catalog(["g1", "s_6_44"], m_values=[3, 5])
    assert [(r.name, r.params) for r in results] == [
        ("g1", {"m": "3"}),
        ("g1", {"m": "5"}),
        ("s_6_44", {}),
    ]
    assert all(r.matched for r in results)


def test_explicit_names_keep_unknown_parameters_as_errors():
    results = run_catalog(["kodaira"], params={"m": "4"})
    assert results[0].error is not None


def test_instance_to_json(catalog_instance):
    data = instance_to_json(catalog_instance("kodaira"))
    assert data["name"] == "kodaira"
    assert data["algebra"]["dim"] == 4
    assert data["algebra"]["labels"] == ["e0", "e1", "e2", "e3"]
    assert data["structures"]["J"][3][0] == "1"
    expected = data["expected"]["J"]
    assert expected["lambda"] == "1"
    assert expected["psi"]["e0"] == "-2"
    assert [(row["status"], row["order"]) for row in expected["invariance"]] == [
        (INVARIANCE_INVARIANT, 1),
        (INVARIANCE_TORSION, 2),
    ]
