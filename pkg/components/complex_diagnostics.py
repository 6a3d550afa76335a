# components/complex_diagnostics.py
"""Complex stage: integrability, psi, the invariant-triviality verdict and Chern-Ricci checks."""

import logging

from utils.complex_structures import (
    chern_ricci,
    chern_ricci_form,
    decide_invariant_trivial,
    dsigma_beta,
    g10_unimodular,
    is_abelian_cs,
    is_bi_invariant,
    verdict_to_json,
)
from utils.constants import OBSTRUCTION_NOTES, VERDICT_NOT_INTEGRABLE
from utils.exceptions import CkitError, InternalConsistencyError
from utils.forms import ce_d, format_form
from utils.lie_algebra import is_unimodular

logger = logging.getLogger(__name__)


def diagnose_structure(L, J):
    """Diagnostics of one complex structure.

    Returns:
        tuple: (report data, TrivialityVerdict)

    Raises:
        InternalConsistencyError: If 2 rho + d psi != 0
    """
    verdict = decide_invariant_trivial(L, J)
    data = verdict_to_json(verdict, L.labels)
    if verdict.verdict == VERDICT_NOT_INTEGRABLE:
        logger.info(f"J is not integrable, witness {data['witness']}")
        return data, verdict

    data["obstruction_note"] = OBSTRUCTION_NOTES[verdict.obstruction.status]
    data["abelian"] = is_abelian_cs(L, J)
    data["bi_invariant"] = is_bi_invariant(L, J)

    rho = chern_ricci(L, J)
    if not (chern_ricci_form(L, J).scale(2) + ce_d(L, verdict.psi.as_form())).is_zero():
        raise InternalConsistencyError("2 rho + d psi != 0")
    data["chern_ricci_zero"] = rho.is_zero()

    data["dsigma"] = format_form(ce_d(L, verdict.sigma), L.labels)
    data["beta"] = format_form(dsigma_beta(L, J), L.labels)
    if is_unimodular(L):
        data["g10_unimodular"] = g10_unimodular(L, J)
    return data, verdict


def complex_stage(L, structures):
    """Run diagnose_structure for every named structure.

    A failure on one structure is recorded under its name and does not stop the others.

    Returns:
        tuple: (stage data, {name: TrivialityVerdict})
    """
    results = {}
    verdicts = {}
    for name, J in structures.items():
        try:
            data, verdict = diagnose_structure(L, J)
        except CkitError as e:
            logger.error(f"Complex diagnostics failed for {name}: {e}")
            results[name] = {"status": "error", "error": f"{type(e).__name__}: {e}"}
            continue
        results[name] = {"status": "ok", **data}
        verdicts[name] = verdict
        logger.info(f"{name}: {data['verdict']}")
    return {"structures": results}, verdicts
