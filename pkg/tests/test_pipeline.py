# tests/test_pipeline.py
import pytest

from components.catalog import build, pipeline_input
from components.pipeline import PipelineInput, exit_code, run_pipeline
from components.report_export import dumps_report
from utils.complex_structures import pairs_structure
from utils.constants import (
    EXIT_INPUT_ERROR,
    EXIT_NEGATIVE,
    EXIT_OK,
    PIPELINE_STAGES,
    VERDICT_NOT_INTEGRABLE,
)
from utils.lie_algebra import abelian, default_labels, lie_algebra
from utils.scalars import PI


@pytest.mark.parametrize(
    "name, code",
    [
        ("kodaira", EXIT_NEGATIVE),
        ("inoue_s0", EXIT_NEGATIVE),
        ("nakamura_s", EXIT_OK),
        ("s_6_44", EXIT_OK),
        ("g_p", EXIT_NEGATIVE),
    ],
)
def test_catalog_exit_codes(name, code):
    report, got = run_pipeline(pipeline_input(build(name)))
    assert got == code
    assert exit_code(report) == code


def test_report_layout(kodaira_algebra, kodaira_J):
    inp = PipelineInput(L=kodaira_algebra, structures={"J": kodaira_J}, periods={"J": (("e0", 2 * PI),)})
    report, code = run_pipeline(inp)
    assert code == EXIT_OK
    assert list(report["stages"]) == PIPELINE_STAGES
    stages = report["stages"]
    assert stages["structure"]["solvable"]
    assert stages["structure"]["unimodular"]
    assert stages["structure"]["derived_series"] == [4, 3, 1, 0]
    assert stages["complex"]["structures"]["J"]["witness"] == "e0"
    assert stages["section"]["structures"]["J"]["verified"]
    assert stages["invariance"]["structures"]["J"]["periods"][0]["status"] == "Invariant"
    assert stages["lattice"]["status"] == "skipped"
    assert stages["hypercomplex"]["status"] == "skipped"


def test_jacobi_failure_skips_everything():
    # [e0, e3] = e1 added to the Kodaira brackets
    L = lie_algebra(
        4,
        {(1, 2): {3: 1}, (0, 1): {2: 1}, (0, 2): {1: -1}, (0, 3): {1: 1}},
        default_labels(4, start=0),
    )
    report, code = run_pipeline(PipelineInput(L=L, structures={"J": pairs_structure(4, [(0, 3), (1, 2)])}))
    assert code == EXIT_INPUT_ERROR
    structure = report["stages"]["structure"]
    assert not structure["jacobi"]["passed"]
    assert structure["jacobi"]["triple"]
    for name in PIPELINE_STAGES[1:]:
        assert report["stages"][name]["status"] == "skipped"


def test_not_integrable_is_negative(kodaira_algebra):
    J = pairs_structure(4, [(0, 1), (2, 3)])
    report, code = run_pipeline(PipelineInput(L=kodaira_algebra, structures={"J": J}))
    assert code == EXIT_NEGATIVE
    assert report["stages"]["complex"]["structures"]["J"]["verdict"] == VERDICT_NOT_INTEGRABLE
    assert report["stages"]["section"]["structures"]["J"]["status"] == "skipped"


def test_abelian_without_structures():
    report, code = run_pipeline(PipelineInput(L=abelian(3)))
    assert code == EXIT_OK
    assert report["stages"]["complex"]["status"] == "skipped"


def test_stage_failure_is_isolated(kodaira_algebra, kodaira_J):
    inp = PipelineInput(L=kodaira_algebra, structures={"J": kodaira_J}, certificates=(None,))
    report, code = run_pipeline(inp)
    assert code == EXIT_INPUT_ERROR
    assert report["stages"]["lattice"]["status"] == "error"
    assert report["stages"]["complex"]["status"] == "ok"
    assert report["stages"]["section"]["structures"]["J"]["verified"]


def test_period_on_unknown_structure(kodaira_algebra, kodaira_J):
    inp = PipelineInput(L=kodaira_algebra, structures={"J": kodaira_J}, periods={"K": (("e0", PI),)})
    report, _ = run_pipeline(inp)
    assert report["stages"]["invariance"]["structures"]["K"]["status"] == "skipped"


def test_reports_are_deterministic():
    first, _ = run_pipeline(pipeline_input(build("s_6_44")))
    second, _ = run_pipeline(pipeline_input(build("s_6_44")))
    assert dumps_report(first) == dumps_report(second)
    assert dumps_report(first).endswith("}\n")
