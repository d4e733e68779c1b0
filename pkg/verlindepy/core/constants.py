# verlindepy/core/constants.py
"""
Default values, limits and identifiers shared by the whole package.
"""

# Oracle precision
DEFAULT_PRECISION_BITS = 256
MIN_PRECISION_BITS = 64
DEFAULT_TOL_ABS = 1e-20
DEFAULT_TOL_REL = 1e-30

# Cost guards
BRUTE_SCAN_MAX_RANK = 4
BRUTE_SCAN_MAX_LEVEL = 8
CHECK_MAX_RANK = 5
CHECK_MAX_LEVEL = 12
CHECK_MAX_GENUS = 3
SYM_POWER_MAX_LEVEL = 15

# CLI exit codes
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_INCONSISTENT = 3

# Formula identifiers carried by DimResult.formula
FORMULA_SL = "sl_verlinde"
FORMULA_SL_SUM = "sl_degree_sum"
FORMULA_PGL = "pgl_component"
FORMULA_PGL_TOTAL = "pgl_total"
FORMULA_TRACE = "trace_order_r"
FORMULA_N1 = "n1_closed_form"
FORMULA_CFT = "cft_s_matrix_sum"
FORMULA_PGL2_SINE = "pgl2_sine_sum"

# Result labels
LABEL_DIMENSION = "dimension"
LABEL_FORMAL = "formal value"

# Output formats
OUTPUT_FORMATS = ("json", "csv", "md")
