DEBUG = False
LOG_LEVEL = "WARNING"

# Rank of the representation, i.e. PSL_n(R).
DEFAULT_RANK = 3
MAX_RANK = 16
API_MAX_RANK = 10

DEFAULT_SCALAR_MODE = "exact"
DEFAULT_OUTPUT_FORMAT = "json"
DEFAULT_METHOD = "closed_form"

VERIFY_SAMPLES = 25
VERIFY_SEED = 42
VERIFY_MAX_N = 7
API_MAX_SAMPLES = 5

FLOAT_TOLERANCE = 1e-9
# Seeded random parameters use numerators and denominators up to this bound.
RANDOM_PARAM_BOUND = 12

# Process pool size for verify and sweep; 1 runs everything in-process.
WORKERS = 1
OUTPUT_PATH = None

# Note that the simple in-memory cache is not shared between worker processes.
# So we combine that with a short cache timeout.
CACHE_TYPE = "SimpleCache"
CACHE_DEFAULT_TIMEOUT = 300
