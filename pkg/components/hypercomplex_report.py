# components/hypercomplex_report.py
"""Hypercomplex stage: quaternion relations, Obata connection and the sphere of structures."""

import logging

from utils.exceptions import ValidationError
from utils.hypercomplex import obata, psi_sphere_check, validate_triple

logger = logging.getLogger(__name__)


def hypercomplex_stage(L, triple, samples=None):
    """Validate a triple, check the Obata connection and sample psi along the sphere.

    Args:
        L (LieAlgebra): Algebra of dimension 4n
        triple (HypercomplexTriple): J1, J2, J3
        samples (list): SpherePoint samples; the default rational points when None

    Returns:
        dict: Stage data
    """
    report = validate_triple(L, triple)
    data = {"triple": {"passed": report.passed}}
    if not report.passed:
        data["triple"]["failing"] = report.failing
        return data

    try:
        obata(L, triple)
        data["obata"] = {"torsion_free": True, "parallel": True}
    except ValidationError as e:
        data["obata"] = {"passed": False, "error": str(e)}
        return data

    sphere = psi_sphere_check(L, triple, samples)
    data["psi"] = {f"J{idx}": p.to_json(L.labels) for idx, p in enumerate(sphere.psis, start=1)}
    data["sphere"] = {
        "some_psi_vanishes": sphere.hypothesis,
        "samples": [
            {"a": point.to_json(), "psi_zero": zero, "verdict": verdict}
            for point, zero, verdict in sphere.samples
        ],
    }
    logger.info(f"Hypercomplex stage sampled {len(sphere.samples)} sphere points")
    return data
