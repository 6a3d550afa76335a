# components/section_report.py
"""Section and invariance stages."""

import logging

from utils.constants import VERDICT_NOT_INTEGRABLE
from utils.exceptions import CkitError, NotSolvableError
from utils.forms import format_form
from utils.scalars import format_scalar
from utils.sections import PeriodData, build_section, lattice_invariance, section_to_json, verify_section

logger = logging.getLogger(__name__)


def section_stage(L, structures, verdicts):
    """Build and verify tau = exp(-f) sigma for every integrable structure.

    Returns:
        tuple: (stage data, {name: SectionDescriptor})
    """
    results = {}
    sections = {}
    for name, J in structures.items():
        verdict = verdicts.get(name)
        if verdict is None:
            results[name] = {"status": "skipped", "reason": "complex diagnostics failed"}
            continue
        if verdict.verdict == VERDICT_NOT_INTEGRABLE:
            results[name] = {"status": "skipped", "reason": "J is not integrable"}
            continue
        try:
            section = build_section(L, J)
            check = verify_section(L, J, section)
        except NotSolvableError as e:
            results[name] = {"status": "skipped", "reason": str(e)}
            continue
        except CkitError as e:
            logger.error(f"Section construction failed for {name}: {e}")
            results[name] = {"status": "error", "error": f"{type(e).__name__}: {e}"}
            continue
        data = {"status": "ok", **section_to_json(section, L.labels)}
        data["invariant"] = section.is_invariant()
        data["verified"] = check.passed
        if not check.passed:
            data["failing"] = check.failing
            data["gap"] = format_form(check.value, L.labels)
            logger.warning(f"Section for {name} fails {check.failing}")
        results[name] = data
        sections[name] = section
    return {"structures": results}, sections


def invariance_stage(sections, periods):
    """Invariance or torsion order of each section under each listed period.

    Args:
        sections (dict): name -> SectionDescriptor
        periods (dict): name -> ((coordinate label or None, period), ...)

    Returns:
        dict: Stage data keyed by structure name
    """
    results = {}
    for name, entries in periods.items():
        section = sections.get(name)
        if section is None:
            results[name] = {"status": "skipped", "reason": "no section was built"}
            continue
        rows = []
        for label, value in entries:
            row = {"coordinate": label, "period": format_scalar(value)}
            try:
                result = lattice_invariance(section, PeriodData.single(label, value))
            except CkitError as e:
                logger.error(f"Invariance check failed for {name} at {row['period']}: {e}")
                row.update({"status": "error", "error": f"{type(e).__name__}: {e}"})
            else:
                row.update({"coordinate": result.coordinate or label, "status": result.status, "order": result.order})
            rows.append(row)
        results[name] = {"status": "ok", "periods": rows}
    return {"structures": results}
