"""
Toolkit Configuration
Settings are read from the environment (and a local .env file when present).
"""

import os

from dotenv import load_dotenv

load_dotenv()

# --- Configuration ---
# Node budget of the exact arboricity solver
ARB_BUDGET = int(os.environ.get("GLARB_ARB_BUDGET", "5000000"))

# Default cap for simple-cycle enumeration
CYCLE_CAPACITY = int(os.environ.get("GLARB_CYCLE_CAPACITY", "200000"))

# Largest vertex count the partition oracle accepts (Bell-number guard)
ORACLE_MAX_VERTICES = int(os.environ.get("GLARB_ORACLE_MAX_VERTICES", "12"))

# Ramsey upper-bound policy: "classical" or "table"
RAMSEY_STUB = os.environ.get("GLARB_RAMSEY_STUB", "classical")

# Exact bounds larger than this many bits are reported instead of evaluated
MAX_BOUND_BITS = int(os.environ.get("GLARB_MAX_BOUND_BITS", "4000000"))

LOG_LEVEL = os.environ.get("GLARB_LOG_LEVEL", "WARNING")
