# components/structure_checks.py
"""Structural stage: Jacobi, solvability, unimodularity and the nilradical candidate."""

import logging

from components.report_export import format_vector
from utils.lie_algebra import is_unimodular, structure_subspaces, validate_jacobi, verify_nilradical
from utils.scalars import format_scalar

logger = logging.getLogger(__name__)


def structure_stage(L, nilradical=None):
    """Structural checks of one algebra.

    Args:
        L (LieAlgebra): The algebra
        nilradical (SubspaceBasis): Optional nilradical candidate

    Returns:
        dict: Stage data; "jacobi" carries the failing triple when Jacobi fails
    """
    jacobi = validate_jacobi(L)
    data = {"dim": L.dim, "jacobi": {"passed": jacobi.passed}}
    if not jacobi.passed:
        data["jacobi"]["triple"] = [L.labels[i] for i in jacobi.triple]
        data["jacobi"]["value"] = [format_scalar(x) for x in jacobi.value]
        logger.warning(f"Jacobi identity fails at {data['jacobi']['triple']}")
        return data

    subspaces = structure_subspaces(L)
    data["solvable"] = subspaces.is_solvable
    data["nilpotent"] = subspaces.is_nilpotent
    data["unimodular"] = is_unimodular(L)
    data["commutator"] = [format_vector(v, L.labels) for v in subspaces.commutator.vectors]
    data["derived_series"] = [len(s) for s in subspaces.derived_series]
    data["lower_central_series"] = [len(s) for s in subspaces.lower_central]
    data["center"] = [format_vector(v, L.labels) for v in subspaces.center.vectors]

    if nilradical is not None:
        if subspaces.is_solvable:
            report = verify_nilradical(L, nilradical)
            data["nilradical"] = {
                "candidate": [format_vector(v, L.labels) for v in nilradical.vectors],
                "status": report.status,
                "reason": report.reason,
            }
        else:
            data["nilradical"] = {"status": "skipped", "reason": "algebra is not solvable"}
    logger.debug(f"Structure stage: solvable={data['solvable']}, unimodular={data['unimodular']}")
    return data
