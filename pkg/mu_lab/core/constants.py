"""
Numeric constants shared across the mu_lab modules.
"""

# Dense vectors
DEFAULT_DENSE_CAP = 2 ** 26
MAX_ORDER = 2 ** 64 - 1

# Transform tolerances
TRANSFORM_TOLERANCE = 1e-10
CONVOLUTION_TOLERANCE = 1e-9
COUNT_RELATIVE_TOLERANCE = 1e-6

# Exact maximization guard: binomial(N, k) * N
DEFAULT_ORACLE_BUDGET = 10 ** 8

# Alternating maximization
DEFAULT_RESTARTS = 20
DEFAULT_MAX_ITERS = 100

# Bounds
DEFAULT_EPSILON = 1.0
DEFAULT_MAIN_CONSTANT = 4.0
DEFAULT_ALON_CONSTANT = 1.0
DEFAULT_PSEUDORANDOM_SLACK = 0.1
KILTZ_ALPHA_LIMIT = 0.25

# Reports
SCHEMA_VERSION = "mu-lab/1"
CSV_SIGNIFICANT_DIGITS = 12
REPORT_FORMATS = ("csv", "json")

# Route tags for MuResult
ROUTE_DIRECT = "direct"
ROUTE_CONVOLUTION = "convolution"
ROUTE_FOURIER = "fourier"
ROUTES = (ROUTE_DIRECT, ROUTE_CONVOLUTION, ROUTE_FOURIER)
