"""Runtime settings read from the environment (and an optional .env file)."""

import os

from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _int_setting(name, default):
    try:
        return int(os.getenv(name, str(default)))
    except (ValueError, TypeError):
        return default  # Default fallback


# Seed shared by every randomized suite
DEFAULT_SEED = _int_setting("HOCA_SEED", 20240611)

# Search caps
DECOMPOSE_CAP = _int_setting("HOCA_DECOMPOSE_CAP", 10_000)
PERIOD_MAX_DEGREE = _int_setting("HOCA_PERIOD_MAX_DEGREE", 30)
DIVISOR_CAP = _int_setting("HOCA_DIVISOR_CAP", 2 ** 20)
EXPONENT_BOUND = _int_setting("HOCA_EXPONENT_BOUND", 2 ** 30)

# CLI defaults
SHIFT_BOUND = _int_setting("HOCA_SHIFT_BOUND", 3)
DEPTH = _int_setting("HOCA_DEPTH", 7)
SLAB_WIDTH = _int_setting("HOCA_SLAB_WIDTH", 15)

OUTPUT_FORMAT = os.getenv("HOCA_FORMAT", "json")
if OUTPUT_FORMAT not in ("json", "ascii", "both"):
    OUTPUT_FORMAT = "json"

LOG_LEVEL = os.getenv("HOCA_LOG_LEVEL", "WARNING").upper()
if LOG_LEVEL not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
    LOG_LEVEL = "WARNING"
