# utils/__init__.py
"""Exact-arithmetic engine: scalars, Lie algebras, forms, complex structures, sections, lattices."""

# Import all utilities for easier access
from utils.exceptions import (
    CkitError,
    ScalarError,
    ValidationError,
    NotIntegrableError,
    NotSolvableError,
    InternalConsistencyError,
    NotExactlyEvaluable,
    UnsupportedError,
    SalamonSyntaxError,
    SalamonElaborationError
)

from utils.scalars import (
    normalize,
    is_zero,
    parse_scalar,
    format_scalar,
    log_unit_symbol,
    unit_value
)

from utils.linalg import (
    SubspaceBasis,
    span,
    extend,
    intersection,
    block_diagonal
)

from utils.lie_algebra import (
    LieAlgebra,
    lie_algebra,
    abelian,
    validate_jacobi,
    is_unimodular,
    structure_subspaces,
    semidirect,
    verify_nilradical,
    change_basis,
    is_isomorphism,
    algebra_to_json,
    algebra_from_json
)

from utils.forms import (
    Form,
    make_form,
    wedge,
    ce_d,
    adapted_coframe,
    bigrade,
    format_form,
    parse_form
)

# Import complex structure diagnostics
from utils.complex_structures import (
    complex_structure,
    pairs_structure,
    conjugate_structure,
    is_integrable,
    is_abelian_cs,
    is_bi_invariant,
    psi,
    obstruction_check,
    decide_invariant_trivial,
    dsigma_beta,
    power_invariant_trivial,
    g10_unimodular,
    chern_ricci,
    chern_ricci_form,
    almost_abelian_report
)

from utils.sections import (
    nice_basis,
    build_section,
    verify_section,
    explicit_rank_one,
    PeriodData,
    lattice_invariance
)

# Import lattice certificates
from utils.lattices import (
    TimeValue,
    pi_time,
    unit_time,
    StructuredDerivation,
    exp_exact,
    Fixed,
    Pair,
    Shear,
    hyperbolic_conjugator,
    LatticeCertificate,
    verify_certificate
)

from utils.hypercomplex import (
    HypercomplexTriple,
    validate_triple,
    sphere_cs,
    obata,
    psi_sphere_check,
    realification_double
)

from utils.file_ops import (
    save_report,
    load_json_document,
    load_algebra_document
)
