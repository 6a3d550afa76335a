# utils/constants.py
"""Constants used throughout the toolkit."""

# Report schema
SCHEMA_VERSION = "ckit/1"

# Exit codes of the command line interface
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2

# Lattice sweeps
DEFAULT_M_VALUES = range(3, 11)

# Angles t*theta must be rational multiples of pi whose denominator divides one of these
EXACT_ANGLE_DENOMINATORS = (1, 2, 3)

# Random (L, J) sweeps
DEFAULT_SWEEP_SAMPLES = 200
DEFAULT_SWEEP_SEED = 20240611
MAX_SAMPLE_DIM = 8
SAMPLE_ENTRY_RANGE = (-2, 2)

# Hypercomplex sphere sampling
DEFAULT_SPHERE_SAMPLES = 10

# Pipeline stage names, in report order
PIPELINE_STAGES = [
    'structure',
    'complex',
    'section',
    'invariance',
    'lattice',
    'hypercomplex',
]

# Verdict vocabulary
VERDICT_INVARIANT_TRIVIAL = "InvariantTrivial"
VERDICT_NO_INVARIANT_SECTION = "NoInvariantSection"
VERDICT_NOT_INTEGRABLE = "NotIntegrable"
OBSTRUCTION_PSI_VANISHES = "PsiVanishesOnCommutator"
OBSTRUCTION_OBSTRUCTED = "ObstructedNotTorsion"

INVARIANCE_INVARIANT = "Invariant"
INVARIANCE_TORSION = "TorsionOrder"
INVARIANCE_NOT_PERIODIC = "NotPeriodic"

NILRADICAL_VERIFIED = "verified"
NILRADICAL_NECESSARY_ONLY = "necessary-only"
NILRADICAL_REJECTED = "rejected"

# Human readable notes attached to obstruction statuses in reports
OBSTRUCTION_NOTES = {
    OBSTRUCTION_PSI_VANISHES: "possibly torsion (non-invariant section required)",
    OBSTRUCTION_OBSTRUCTED: "no compact quotient has torsion canonical bundle",
}

