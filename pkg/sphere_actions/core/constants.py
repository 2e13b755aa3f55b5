"""Defaults and fixed parameters for sphere_actions."""

# Randomized checks
DEFAULT_SEED = 20240917
DEFAULT_ACTION_SAMPLES = 500
DEFAULT_WORD_LENGTH = 8         # Maximum length of randomly sampled words

# Witness search
WITNESS_LENGTH_CAP = 16         # Hard cap on witness length for the general decider
WITNESS_WORD_BUDGET = 2_000_000 # Words examined before the general decider gives up
DEFAULT_WITNESS_LENGTH = 8      # find_witness default from the CLI

# Canonical form fallback
FALLBACK_MAX_RANK = 3
FALLBACK_SEARCH_RANGE = 3       # Entries of candidate conjugators lie in [-3, 3]

# Covering enumeration
DEFAULT_MAX_COVER_INDEX = 48
MAX_COVER_INDEX_BOUND = 48
SUBGROUP_SEARCH_INDEX = 12      # Breadth-first cross-check of the subgroup parametrization
SUBGROUP_SEARCH_BOX = 12        # Translation range of candidate generators

# Text formats
WORD_TOKEN_PATTERN = r"^x([1-9][0-9]*)(\^(-?1))?$"
MATRIX_ROW_SEPARATOR = ";"

# CLI exit codes
EXIT_DECIDED = 0
EXIT_INVALID_INPUT = 1
EXIT_UNKNOWN = 2

# Logging
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"
