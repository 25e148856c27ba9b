"""
Configuration settings for the bootstrap percolation laboratory.
"""
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _env_bool(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


# Exhaustive search settings
SEARCH_MAX_N = int(os.getenv("KBP_SEARCH_MAX_N", "7"))
SEARCH_HARD_MAX_N = int(os.getenv("KBP_SEARCH_HARD_MAX_N", "8"))
WITNESS_CAP = int(os.getenv("KBP_WITNESS_CAP", "16"))

# Source analysis settings
META_CLIQUE_BUDGET = int(os.getenv("KBP_META_CLIQUE_BUDGET", "100000"))

# Randomness and parallelism
DEFAULT_SEED = int(os.getenv("KBP_SEED", "0"))
DEFAULT_WORKERS = int(os.getenv("KBP_WORKERS", "-1"))  # -1: all cores
DEFAULT_TRIALS = int(os.getenv("KBP_TRIALS", "1000"))

# Monte Carlo reporting
THRESHOLD_QUANTILES = (0.1, 0.25, 0.5, 0.75, 0.9)
PROBABILITY_DIGITS = 6

# Output settings
FORMAT_VERSION = "1"
LOG_LEVEL = os.getenv("KBP_LOG_LEVEL", "WARNING")
SHOW_PROGRESS = _env_bool("KBP_SHOW_PROGRESS", False)
