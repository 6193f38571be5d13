"""
Constants shared across the peq package.
"""

# Dense materialization guard (entries, not bytes)
DEFAULT_MAX_ENTRIES = 2 ** 26
MAX_ENTRIES_ENV = "PEQ_MAX_ENTRIES"

# Scalar field names as they appear in tensor/layer files and on the CLI
FIELD_NAMES = ("int", "rational", "gf2", "f64")
VERIFY_FIELDS = ("rational", "gf2")

# CLI exit codes
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CAPACITY = 2

# Basis kinds accepted by `peq basis --kind`
BASIS_KINDS = ("orbit", "diagram")

# Default benchmark repetitions
BENCH_DEFAULT_REPS = 5

# Boolean basis masks kept in memory: at most this many, each at most this many entries
MASK_CACHE_SIZE = 32
MASK_CACHE_MAX_ENTRIES = 2 ** 20
