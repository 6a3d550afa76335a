# components/catalog.py
"""Catalog registry: build entries by name and check them against their expected diagnostics."""

import logging
from dataclasses import dataclass

from components import catalog_entries as entries
from components.catalog_entries import Param
from components.fp_builders import FP1Data, fp1_verdict_conditions, fp2_verdict_conditions
from components.pipeline import PipelineInput, run_pipeline
from components.report_export import format_matrix
from utils.constants import VERDICT_INVARIANT_TRIVIAL
from utils.exceptions import CkitError, ScalarError, ValidationError
from utils.lie_algebra import algebra_to_json, is_isomorphism
from utils.linalg import matrices_equal
from utils.scalars import PI, format_scalar, parse_scalar

logger = logging.getLogger(__name__)

M_PARAM = Param("m", "int", 3, "Lattice parameter: t_m = log((m + sqrt(m^2 - 4)) / 2)")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    builder: object
    params: tuple
    description: str


ENTRIES = (
    CatalogEntry("kodaira", entries.kodaira, (), "Primary Kodaira surface, R x H_3"),
    CatalogEntry(
        "inoue_s0", entries.inoue_s0,
        (Param("b", "scalar", 1, "Rotation speed in the e2, e3 plane"),),
        "Inoue surface of type S_0",
    ),
    CatalogEntry("g1", entries.g1, (M_PARAM,), "Almost abelian g_1 = (e^15, -e^25, -e^35, e^45, 0, 0)"),
    CatalogEntry(
        "g2_alpha", entries.g2_alpha,
        (Param("alpha", "scalar", 0, "Real parameter of the family"),),
        "Almost abelian family g_2^alpha",
    ),
    CatalogEntry("nakamura_s", entries.nakamura_s, (M_PARAM,), "Real form s of the complex Nakamura algebra"),
    CatalogEntry(
        "s_n", entries.s_n,
        (Param("n", "int", 1, "Number of 4-dimensional blocks"), M_PARAM),
        "Generalized Nakamura algebra R^2 x R^4n",
    ),
    CatalogEntry(
        "an1_i", entries.an1_i,
        (Param("n", "int", 1, "h_{4n+1} has 4n + 1 dimensions"), M_PARAM),
        "Almost nilpotent AN-1, hyperbolic family",
    ),
    CatalogEntry(
        "an1_ii", entries.an1_ii,
        (Param("a", "scalars", (PI, -PI), "Rotation angles a_j, multiples of pi/2 summing to 0"),),
        "Almost nilpotent AN-1, rotation family",
    ),
    CatalogEntry(
        "an2_i", entries.an2_i,
        (
            Param("n", "int", 2, "Algebra of dimension 4n, n >= 2"),
            Param("v1", "scalar", 1, "Nonzero rational shear coefficient on e1"),
            Param("v2", "scalar", 1, "Nonzero rational shear coefficient on e2"),
            M_PARAM,
        ),
        "Almost nilpotent AN-2, hyperbolic family",
    ),
    CatalogEntry(
        "an2_ii", entries.an2_ii,
        (
            Param("a", "scalars", (PI, -PI), "Rotation angles a_i, multiples of pi/2 summing to 0"),
            Param("v1", "scalar", 1, "Nonzero rational shear coefficient on e1"),
            Param("v2", "scalar", 1, "Nonzero rational shear coefficient on e2"),
        ),
        "Almost nilpotent AN-2, rotation family",
    ),
    CatalogEntry(
        "g_p", entries.g_p,
        (Param("m", "int", 3, "Lattice parameter: p = s_m / pi with s_m = log((m + sqrt(m^2 + 4)) / 2)"),),
        "G_{5.17}^{p,-p,2} x R with torsion canonical bundle",
    ),
    CatalogEntry("s_6_44", entries.s_6_44, (), "s_{6.44} with a non-invariant trivializing section"),
    CatalogEntry(
        "nakamura_splitting_JB", entries.nakamura_splitting_JB,
        (
            Param("r", "scalar", 0, "Real part of B, |B| < 1"),
            Param("s", "scalar", 0, "Imaginary part of B, |B| < 1"),
            M_PARAM,
        ),
        "Splitting-type structure J_B on the Nakamura algebra",
    ),
    CatalogEntry(
        "hypercomplex_ghat", entries.hypercomplex_ghat, (M_PARAM,),
        "8-dimensional hypercomplex double with J1 non-invariantly trivial",
    ),
)

ALIASES = {"nakamura_s_n": "s_n"}

_REGISTRY = {entry.name: entry for entry in ENTRIES}


def _param_default_text(param):
    if param.kind == "int":
        return param.default
    if param.kind == "scalars":
        return [format_scalar(x) for x in param.default]
    return format_scalar(param.default)


def list_entries():
    """Entry names, descriptions and parameter schemas, in registry order."""
    return [
        {
            "name": entry.name,
            "description": entry.description,
            "params": [
                {"name": p.name, "kind": p.kind, "default": _param_default_text(p), "description": p.description}
                for p in entry.params
            ],
        }
        for entry in ENTRIES
    ]


def get_entry(name):
    """Look up an entry by name or alias.

    Raises:
        ValidationError: If the name is unknown
    """
    entry = _REGISTRY.get(ALIASES.get(name, name))
    if entry is None:
        raise ValidationError(f"Unknown catalog entry '{name}'", witness=name)
    return entry


def parse_param(param, value):
    """Convert a flag value (or an already typed value) to the parameter's kind.

    Raises:
        ValidationError: If the value cannot be read
    """
    try:
        if param.kind == "int":
            return int(value)
        if param.kind == "scalars":
            if isinstance(value, str):
                return tuple(parse_scalar(x) for x in value.split(",") if x.strip())
            return tuple(parse_scalar(x) if isinstance(x, str) else x for x in value)
        return parse_scalar(value) if isinstance(value, str) else value
    except (ValueError, ScalarError) as e:
        raise ValidationError(f"Invalid value for parameter {param.name}: {value!r}", witness=param.name) from e


def has_param(name, param_name):
    return any(p.name == param_name for p in get_entry(name).params)


def build(name, params=None):
    """Build a catalog instance.

    Args:
        name (str): Entry name or alias
        params (dict): Parameter values, as text or typed; missing ones take defaults

    Returns:
        CatalogInstance: The built instance

    Raises:
        ValidationError: Unknown entry, unknown parameter, or a value the family rejects
    """
    entry = get_entry(name)
    params = dict(params or {})
    known = {p.name for p in entry.params}
    unknown = sorted(set(params) - known)
    if unknown:
        raise ValidationError(f"Entry {entry.name} has no parameter(s) {unknown}", witness=unknown)
    kwargs = {p.name: parse_param(p, params.get(p.name, p.default)) for p in entry.params}
    logger.info(f"Building catalog entry {entry.name} with {kwargs}")
    return entry.builder(**kwargs)


def pipeline_input(instance):
    return PipelineInput(
        L=instance.L,
        structures=instance.structures,
        triple=instance.triple,
        certificates=instance.certificates,
        periods=instance.periods,
        nilradical=instance.nilradical,
        source=f"catalog:{instance.name}",
    )


@dataclass(frozen=True)
class Check:
    structure: str
    field: str
    expected: object
    actual: object
    matched: bool
    provenance: str = ""


@dataclass(frozen=True)
class CatalogResult:
    name: str
    params: dict
    report: dict = None
    checks: tuple = ()
    error: str = None

    @property
    def matched(self):
        return self.error is None and all(c.matched for c in self.checks)


def _check(structure, name, expected, actual, provenance=""):
    return Check(structure, name, expected, actual, expected == actual, provenance)


def _expected_checks(instance, stages):
    complex_data = stages["complex"].get("structures", {})
    section_data = stages["section"].get("structures", {})
    invariance_data = stages["invariance"].get("structures", {})
    for name, exp in instance.expected.items():
        data = complex_data.get(name, {})
        tag = exp.provenance
        if exp.psi is not None:
            psi = data.get("psi", {})
            for label, value in exp.psi.items():
                yield _check(name, f"psi({label})", format_scalar(value), psi.get(label), tag)
        if exp.verdict is not None:
            yield _check(name, "verdict", exp.verdict, data.get("verdict"), tag)
        if exp.obstruction is not None:
            yield _check(name, "obstruction", exp.obstruction, data.get("obstruction"), tag)
        section = section_data.get(name, {})
        if section.get("status") == "ok":
            yield _check(name, "section verified", True, section.get("verified"), "derived")
            yield _check(
                name, "section invariant", exp.verdict == VERDICT_INVARIANT_TRIVIAL, section.get("invariant"), tag
            )
        if exp.lam is not None:
            yield _check(name, "lambda", format_scalar(exp.lam), section.get("lambda"), tag)
        rows = invariance_data.get(name, {}).get("periods", [])
        for (status, order), (label, period) in zip(exp.invariance, instance.periods.get(name, ())):
            row = next((r for r in rows if r["period"] == format_scalar(period)), {})
            yield _check(
                name, f"invariance({label}, {format_scalar(period)})",
                f"{status} {order}", f"{row.get('status')} {row.get('order')}", tag,
            )


def _construction_checks(instance):
    data = instance.construction
    if data is None:
        return
    conditions = fp1_verdict_conditions(data) if isinstance(data, FP1Data) else fp2_verdict_conditions(data)
    expected = all(e.verdict == VERDICT_INVARIANT_TRIVIAL for e in instance.expected.values())
    yield _check("J", "closed (n,0)-form conditions", expected, all(conditions), "derived")


def _isomorphism_checks(instance):
    iso = instance.isomorphism
    if iso is None:
        return
    ok, witness = is_isomorphism(iso.source, instance.L, iso.phi)
    yield _check(iso.target, "phi is an isomorphism", True, ok, "derived")
    target_J = instance.structures[iso.target]
    intertwines = matrices_equal(iso.phi * iso.source_J, target_J * iso.phi)
    yield _check(iso.target, "phi J = J' phi", True, intertwines, "derived")


def check_instance(instance, report):
    """Compare a pipeline report with the instance's expected diagnostics.

    Returns:
        tuple: Check objects, one per compared value
    """
    stages = report["stages"]
    checks = [_check("", "jacobi", True, stages["structure"].get("jacobi", {}).get("passed"), "derived")]
    if instance.nilradical is not None:
        nil = stages["structure"].get("nilradical", {})
        checks.append(_check("", "nilradical", "verified", nil.get("status"), "derived"))
    checks.extend(_expected_checks(instance, stages))
    for cert in stages["lattice"].get("certificates", []):
        checks.append(_check("", f"certificate {cert['name']}", True, cert.get("passed"), "published"))
    if instance.triple is not None:
        triple = stages["hypercomplex"].get("triple", {})
        checks.append(_check("", "hypercomplex triple", True, triple.get("passed"), "published"))
    checks.extend(_construction_checks(instance))
    checks.extend(_isomorphism_checks(instance))
    return tuple(checks)


def _params_text(params):
    out = {}
    for key, value in params.items():
        if isinstance(value, tuple):
            out[key] = ",".join(format_scalar(v) for v in value)
        elif isinstance(value, int):
            out[key] = str(value)
        else:
            out[key] = format_scalar(value)
    return out


def run_entry(name, params=None):
    """Build one entry, run the pipeline on it and check the expectations.

    Returns:
        CatalogResult: With the report and checks, or the build error
    """
    try:
        instance = build(name, params)
    except CkitError as e:
        logger.error(f"Catalog entry {name} could not be built: {e}")
        return CatalogResult(name, dict(params or {}), error=f"{type(e).__name__}: {e}")
    report, _ = run_pipeline(pipeline_input(instance))
    checks = check_instance(instance, report)
    result = CatalogResult(instance.name, _params_text(instance.params), report, checks)
    if result.matched:
        logger.info(f"Catalog entry {instance.name} matches its expected diagnostics")
    else:
        failed = [f"{c.structure}:{c.field}" for c in checks if not c.matched]
        logger.warning(f"Catalog entry {instance.name} mismatches: {failed}")
    return result


def run_catalog(names=None, m_values=None, params=None):
    """Run several entries; entries with an m parameter are repeated for every m given.

    Returns:
        list: CatalogResult objects in run order
    """
    explicit = bool(names)
    names = list(names) if names else [entry.name for entry in ENTRIES]
    results = []
    for name in names:
        base = dict(params or {})
        if not explicit:
            # a full run only passes each entry the parameters it declares
            base = {k: v for k, v in base.items() if has_param(name, k)}
        if m_values and has_param(name, "m"):
            for m in m_values:
                results.append(run_entry(name, {**base, "m": m}))
        else:
            results.append(run_entry(name, base))
    return results


def instance_to_json(instance):
    """Algebra document plus the structures and the expected block."""
    expected = {}
    for name, exp in instance.expected.items():
        block = {"provenance": exp.provenance}
        if exp.psi is not None:
            block["psi"] = {label: format_scalar(v) for label, v in exp.psi.items()}
        if exp.verdict is not None:
            block["verdict"] = exp.verdict
        if exp.obstruction is not None:
            block["obstruction"] = exp.obstruction
        if exp.lam is not None:
            block["lambda"] = format_scalar(exp.lam)
        if exp.invariance:
            block["invariance"] = [
                {"coordinate": label, "period": format_scalar(period), "status": status, "order": order}
                for (status, order), (label, period) in zip(exp.invariance, instance.periods.get(name, ()))
            ]
        expected[name] = block
    return {
        "name": instance.name,
        "params": _params_text(instance.params),
        "algebra": algebra_to_json(instance.L),
        "structures": {name: format_matrix(J) for name, J in instance.structures.items()},
        "expected": expected,
    }
