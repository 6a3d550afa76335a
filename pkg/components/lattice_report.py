# components/lattice_report.py
"""Lattice stage: certificate verification."""

import logging

from components.report_export import format_matrix
from utils.exceptions import CkitError
from utils.lattices import verify_certificate

logger = logging.getLogger(__name__)


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


def certificate_entry(cert):
    """Verification result of one certificate as report data."""
    data = {"name": cert.name}
    try:
        report = verify_certificate(cert)
    except CkitError as e:
        logger.error(f"Certificate {cert.name} could not be evaluated: {e}")
        data.update({"passed": False, "failing": "evaluation", "error": f"{type(e).__name__}: {e}"})
        return data
    data["passed"] = report.passed
    if not report.passed:
        data["failing"] = report.failing
        data["witness"] = _jsonable(report.witness)
        logger.warning(f"Certificate {cert.name} fails the {report.failing} check")
    data["conjugates"] = [format_matrix(C) for C in report.conjugates]
    return data


def lattice_stage(certificates):
    return {"certificates": [certificate_entry(c) for c in certificates]}
