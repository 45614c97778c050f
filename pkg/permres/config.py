import os

# Group construction
ORDER_LIMIT = int(os.environ.get("PERMRES_ORDER_LIMIT", "4096"))
IRREDUCIBLE_TABLE_MAX_Q = 1024     # default polynomials memoised up to this order
EXHAUSTIVE_CHECK_MAX_Q = 64        # associativity / additivity checked on every triple up to here
SAMPLED_CHECKS = 10_000            # random triples/pairs above it
FERMAT_CHECK_MAX_Q = 512           # a^q == a verified for every element up to here
CHECK_SEED = 0x5EED

# Exact solver
SOLVER_MAX_Q = int(os.environ.get("PERMRES_SOLVER_MAX_Q", "31"))
SOLVER_MAX_SETS = int(os.environ.get("PERMRES_MAX_SETS", "5000000"))
SOLVER_TIME_LIMIT = float(os.environ.get("PERMRES_TIME_LIMIT", "600"))  # seconds
ORACLE_MAX_Q = 8                   # q! permutations
ENUMERATE_KEEP = 100               # optimal shift sets kept when enumerating all

# Concurrency
DEFAULT_JOBS = int(os.environ.get("PERMRES_JOBS", "1"))
PARALLEL_BATCH = 20                # branches submitted per gather round

# Low-DU pipeline
PIPELINE_CAP = 50

# Logging
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# Verification suites
VERIFY_Q_MAX = 9
VERIFY_SAMPLES = 200
VERIFY_P_LIST = (7, 11, 13)
