# components/pipeline.py
"""Full diagnostic pipeline over one algebra and its complex structures.

Stages run in the order of PIPELINE_STAGES. A stage that raises is recorded
as an error and the remaining stages still run on whatever earlier stages
produced.
"""

import logging
import traceback
from dataclasses import dataclass, field

from components.complex_diagnostics import complex_stage
from components.hypercomplex_report import hypercomplex_stage
from components.lattice_report import lattice_stage
from components.report_export import format_matrix, format_vector
from components.section_report import invariance_stage, section_stage
from components.structure_checks import structure_stage
from utils.constants import (
    EXIT_INPUT_ERROR,
    EXIT_NEGATIVE,
    EXIT_OK,
    INVARIANCE_INVARIANT,
    OBSTRUCTION_OBSTRUCTED,
    PIPELINE_STAGES,
    SCHEMA_VERSION,
    VERDICT_NOT_INTEGRABLE,
)
from utils.exceptions import CkitError
from utils.lie_algebra import algebra_to_json
from utils.scalars import format_scalar

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PipelineInput:
    """Everything one pipeline run looks at.

    Attributes:
        L (LieAlgebra): The algebra
        structures (dict): Name -> J
        triple (HypercomplexTriple): Optional hypercomplex triple
        certificates (tuple): LatticeCertificate objects
        periods (dict): Structure name -> ((coordinate label, period), ...)
        nilradical (SubspaceBasis): Optional nilradical candidate
        source (str): Where the input came from, for the report header
    """

    L: object
    structures: dict = field(default_factory=dict)
    triple: object = None
    certificates: tuple = ()
    periods: dict = field(default_factory=dict)
    nilradical: object = None
    source: str = ""


def _input_section(inp):
    data = {"source": inp.source, "algebra": algebra_to_json(inp.L)}
    data["structures"] = {name: format_matrix(J) for name, J in inp.structures.items()}
    if inp.periods:
        data["periods"] = {
            name: [{"coordinate": label, "period": format_scalar(p)} for label, p in entries]
            for name, entries in inp.periods.items()
        }
    if inp.nilradical is not None:
        data["nilradical"] = [format_vector(v, inp.L.labels) for v in inp.nilradical.vectors]
    if inp.certificates:
        data["certificates"] = [c.name for c in inp.certificates]
    return data


def _run_stage(name, func, *args):
    """Call one stage; returns (stage data, extra value or None)."""
    logger.info(f"Stage {name} started")
    try:
        result = func(*args)
    except CkitError as e:
        logger.error(f"Stage {name} failed: {type(e).__name__}: {e}")
        return {"status": "error", "stage": name, "error": f"{type(e).__name__}: {e}"}, None
    except Exception as e:
        logger.error(f"Unexpected error in stage {name}: {e}")
        logger.error(traceback.format_exc())
        return {"status": "error", "stage": name, "error": f"{type(e).__name__}: {e}"}, None
    data, extra = result if isinstance(result, tuple) else (result, None)
    logger.info(f"Stage {name} finished")
    return {"status": "ok", **data}, extra


def _skipped(reason):
    return {"status": "skipped", "reason": reason}


def run_pipeline(inp):
    """Run every stage and build the report.

    Args:
        inp (PipelineInput): The input bundle

    Returns:
        tuple: (report dict, exit code)
    """
    stages = {}
    stages["structure"], _ = _run_stage("structure", structure_stage, inp.L, inp.nilradical)
    jacobi_ok = stages["structure"].get("jacobi", {}).get("passed", False)

    verdicts, sections = {}, {}
    if not jacobi_ok:
        for name in PIPELINE_STAGES[1:]:
            stages[name] = _skipped("Jacobi identity fails")
    else:
        if inp.structures:
            stages["complex"], verdicts = _run_stage("complex", complex_stage, inp.L, inp.structures)
            stages["section"], sections = _run_stage(
                "section", section_stage, inp.L, inp.structures, verdicts or {}
            )
        else:
            stages["complex"] = _skipped("no complex structure given")
            stages["section"] = _skipped("no complex structure given")
        if inp.periods:
            stages["invariance"], _ = _run_stage("invariance", invariance_stage, sections or {}, inp.periods)
        else:
            stages["invariance"] = _skipped("no periods given")
        if inp.certificates:
            stages["lattice"], _ = _run_stage("lattice", lattice_stage, inp.certificates)
        else:
            stages["lattice"] = _skipped("no certificate given")
        if inp.triple is not None:
            stages["hypercomplex"], _ = _run_stage("hypercomplex", hypercomplex_stage, inp.L, inp.triple)
        else:
            stages["hypercomplex"] = _skipped("no hypercomplex triple given")

    report = {
        "schema": SCHEMA_VERSION,
        "input": _input_section(inp),
        "stages": {name: stages[name] for name in PIPELINE_STAGES},
    }
    code = exit_code(report)
    logger.info(f"Pipeline finished with exit code {code}")
    return report, code


def _negative_findings(stages):
    """Yield a short description of every negative mathematical result."""
    for name, data in stages.get("complex", {}).get("structures", {}).items():
        if data.get("verdict") == VERDICT_NOT_INTEGRABLE:
            yield f"{name}: not integrable"
        if data.get("obstruction") == OBSTRUCTION_OBSTRUCTED:
            yield f"{name}: obstructed"
    for name, data in stages.get("section", {}).get("structures", {}).items():
        if data.get("status") == "ok" and not data.get("verified"):
            yield f"{name}: section fails"
    for name, data in stages.get("invariance", {}).get("structures", {}).items():
        for row in data.get("periods", []):
            if row.get("status") not in (INVARIANCE_INVARIANT, "error"):
                yield f"{name}: {row['status']} at period {row['period']}"
    for cert in stages.get("lattice", {}).get("certificates", []):
        if not cert.get("passed"):
            yield f"certificate {cert['name']} fails"
    hyper = stages.get("hypercomplex", {})
    if hyper.get("status") == "ok" and not (
        hyper["triple"]["passed"] and hyper.get("obata", {}).get("passed", True)
    ):
        yield "hypercomplex triple fails"


def _has_errors(stages):
    for data in stages.values():
        if data.get("status") == "error":
            return True
        for entry in data.get("structures", {}).values():
            if entry.get("status") == "error":
                return True
            if any(row.get("status") == "error" for row in entry.get("periods", [])):
                return True
    return False


def exit_code(report):
    """2 on input or stage errors, 1 on a negative verdict, 0 otherwise."""
    stages = report["stages"]
    structure = stages.get("structure", {})
    if _has_errors(stages) or not structure.get("jacobi", {}).get("passed", False):
        return EXIT_INPUT_ERROR
    findings = list(_negative_findings(stages))
    if findings:
        logger.info(f"Negative results: {', '.join(findings)}")
        return EXIT_NEGATIVE
    return EXIT_OK
