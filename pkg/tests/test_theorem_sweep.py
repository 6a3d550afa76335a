# tests/test_theorem_sweep.py
import pandas as pd

from components.theorem_sweep import SWEEP_COLUMNS, catalog_pairs, check_sample, run_sweep, sweep_passed
from utils.complex_structures import pairs_structure
from utils.constants import VERDICT_NO_INVARIANT_SECTION, VERDICT_NOT_INTEGRABLE


def test_kodaira_row(kodaira_algebra, kodaira_J):
    row = check_sample("kodaira", kodaira_algebra, kodaira_J)
    assert row["Verdict"] == VERDICT_NO_INVARIANT_SECTION
    assert not row["Sigma Closed"]
    assert row["Agree"]
    assert row["Chern-Ricci"]
    assert row["Integrable"]
    assert row["dSigma Formula"]
    assert "Error" not in row


def test_non_integrable_row(kodaira_algebra):
    row = check_sample("twisted", kodaira_algebra, pairs_structure(4, [(0, 1), (2, 3)]))
    assert row["Verdict"] == VERDICT_NOT_INTEGRABLE
    assert row["Agree"]
    assert row["dSigma Formula"] is None


def test_sweep_with_catalog(catalog_instance):
    instances = [catalog_instance("kodaira"), catalog_instance("nakamura_s")]
    df = run_sweep(samples=6, seed=11, instances=instances)
    assert list(df.columns) == SWEEP_COLUMNS + ["Error"]
    assert len(df) == 3 + 6
    assert list(df["Sample"][:3]) == ["kodaira/J", "nakamura_s/J", "nakamura_s/J_tilde"]
    assert sweep_passed(df)


def test_sweep_is_seeded():
    first = run_sweep(samples=4, seed=3)
    second = run_sweep(samples=4, seed=3)
    pd.testing.assert_frame_equal(first, second)


def test_catalog_pairs(catalog_instance):
    pairs = catalog_pairs([catalog_instance("hypercomplex_ghat")])
    assert [name for name, _, _ in pairs] == [
        "hypercomplex_ghat/J1",
        "hypercomplex_ghat/J2",
        "hypercomplex_ghat/J3",
    ]


def test_sweep_passed_flags_disagreement():
    df = pd.DataFrame([
        {"Sample": "a", "Agree": True, "Chern-Ricci": True, "dSigma Formula": None},
        {"Sample": "b", "Agree": False, "Chern-Ricci": True, "dSigma Formula": True},
    ])
    assert not sweep_passed(df)
    assert sweep_passed(df.iloc[:1])
    assert sweep_passed(pd.DataFrame())
