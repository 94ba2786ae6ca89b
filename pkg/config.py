# config.py - Colored-Burau toolkit configuration

import os
from dotenv import load_dotenv

# Load environment variables (.env overrides the defaults below)
load_dotenv()


def _env_int(name: str, default: int) -> int:
    value = os.getenv(f"CB_{name}")
    return int(value) if value not in (None, "") else default


def _env_bool(name: str, default: bool) -> bool:
    value = os.getenv(f"CB_{name}")
    if value in (None, ""):
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


# Defaults for the command line
DEFAULT_N = _env_int("DEFAULT_N", 4)          # Smallest strand count where faithfulness is open
DEFAULT_SEED = _env_int("DEFAULT_SEED", 20240229)
DEFAULT_JOBS = _env_int("DEFAULT_JOBS", 1)

# Search depths: symbolic entries grow fast, evaluated ones stay small
SYMBOLIC_SEARCH_DEPTH = _env_int("SYMBOLIC_SEARCH_DEPTH", 6)
NUMERIC_SEARCH_DEPTH = _env_int("NUMERIC_SEARCH_DEPTH", 8)

# Ping-pong sampling
PINGPONG_SAMPLES = _env_int("PINGPONG_SAMPLES", 1000)
PINGPONG_MAX_POWER = _env_int("PINGPONG_MAX_POWER", 25)

# Logging
LOG_DIR = os.getenv("CB_LOG_DIR", "logs")
LOG_FILE = "cb_run.log"
REPORT_TEE = _env_bool("REPORT_TEE", False)  # Copy every report to LOG_DIR/last_report.txt

# Exit codes
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

# Status markers for human-readable summaries (single source of truth)
STATUS_EMOJIS = {
    True: "✅",
    False: "❌",
    None: "⚠️ ",
}

# Subcommands and the search depth they default to (None = no search)
SUBCOMMANDS = {
    "eval": None,
    "puregen": None,
    "verify-lemma": None,
    "eigen": None,
    "free-pair": NUMERIC_SEARCH_DEPTH,
    "kernel-search": SYMBOLIC_SEARCH_DEPTH,
    "center-det": None,
    "pingpong": None,
    "acceptance": None,
}
