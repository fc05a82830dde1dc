"""
semibrick-lab - Constants & Defaults

Centralised configuration for the field, search budgets, report schema,
exit codes and bundled data locations.  Edit this file to change a default
for every subcommand at once.
"""

from pathlib import Path

# ---------------------------------------------------------------------------
#  Field
# ---------------------------------------------------------------------------

# Mersenne prime 2^31 - 1.  Entries stay below 2^31 so a product of two
# entries fits in int64 without overflow.
DEFAULT_PRIME = 2**31 - 1
MAX_PRIME = 2**31 - 1

# ---------------------------------------------------------------------------
#  Search budgets
# ---------------------------------------------------------------------------

DEFAULT_SEED = 0
DEFAULT_TRIALS = 40
DEFAULT_L_MAX = 6
DEFAULT_SAMPLES = 7
DEFAULT_ISO_COMBINATIONS = 8
DEFAULT_SPLIT_TRIALS = 24
DEFAULT_WORKERS = 1

# Exhaustive submodule enumeration bounds for the F-bar-theta oracle
FBAR_MAX_TOTAL_DIM = 8

# Upper bound on points visited by exhaustive_brick_search and on subspace
# tuples visited by the F-bar-theta enumeration
EXHAUSTIVE_POINT_LIMIT = 20_000

# ---------------------------------------------------------------------------
#  Reports
# ---------------------------------------------------------------------------

SCHEMA_VERSION = "1.0"

FIELD_NOTE = "over F_p; generic claims heuristic via Schwartz-Zippel"

VIOLATION_FLAG = "THEOREM-VIOLATION-SUSPECTED"

# ---------------------------------------------------------------------------
#  Exit codes
# ---------------------------------------------------------------------------

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_EXHAUSTED = 3

# ---------------------------------------------------------------------------
#  Bundled data
# ---------------------------------------------------------------------------

DATA_DIR = Path(__file__).resolve().parent / "data"
QUIVER_DIR = DATA_DIR / "quivers"
MODULE_DIR = DATA_DIR / "modules"

QUIVER_SUFFIX = ".q"
MODULE_SUFFIX = ".json"

# ---------------------------------------------------------------------------
#  Subcommands (also used for "did you mean" hints)
# ---------------------------------------------------------------------------

SUBCOMMANDS = [
    "hom", "ext", "brick", "semibrick", "iso", "open",
    "schur", "classify", "candecomp", "decompose",
    "theta", "present", "fbar", "fei",
    "extend", "grow", "probe", "generic-hom",
    "component", "perp", "selftest",
]
