import os
import json
import sys
import logging

from dotenv import load_dotenv

from .exceptions import CarrierTooLarge, ConfigurationError

logger = logging.getLogger(__name__)


def get_app_dir():
    """Returns the repository root (the directory holding src/)."""
    return os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))


APP_NAME = "rmwb"
APP_VERSION = "0.3.0"
SETTINGS_PATH = os.path.join(get_app_dir(), "settings.json")
LOG_PATH = os.path.join(get_app_dir(), "rmwb.log")
ENV_PATH = os.path.join(get_app_dir(), ".env")

# Bitsets are one machine word wide
HARD_CARRIER_LIMIT = 64
DEFAULT_SWEEP_SIZE = 4

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
_TRUTHY = {"1", "true", "yes", "on"}


def load_environment():
    """Load variables from the .env file next to the repository root.

    Variables already present in the process environment are kept.
    """
    loaded = load_dotenv(ENV_PATH, override=False)
    if loaded:
        logger.debug(f"Environment loaded from {ENV_PATH}")
    return loaded


def setup_logging(level=None, log_to_file=None):
    """Configure the root logger.

    Output goes to stderr; stdout is left to command output so emitted
    files stay byte-identical between runs.
    """
    workbench = get_workbench_config()
    if level is None:
        level = workbench["log_level"]
    if log_to_file is None:
        log_to_file = workbench["log_to_file"]

    handlers = [logging.StreamHandler(sys.stderr)]
    if log_to_file:
        handlers.append(logging.FileHandler(LOG_PATH, encoding="utf-8"))

    logging.basicConfig(
        level=level,
        format=LOG_FORMAT,
        handlers=handlers,
        force=True,
    )


def load_settings():
    try:
        if os.path.exists(SETTINGS_PATH):
            with open(SETTINGS_PATH, "r", encoding="utf-8") as f:
                return json.load(f)
    except Exception as e:
        logger.error(f"Error loading settings: {e}")
    return {}


def get_max_carrier(settings=None):
    """Resolve the carrier cap: env RMWB_MAX_CARRIER, then settings, then 64.

    Raises:
        ConfigurationError: If the value is not an integer in 1..64.
    """
    raw = os.getenv("RMWB_MAX_CARRIER")
    source = "RMWB_MAX_CARRIER"
    if raw is None or raw.strip() == "":
        if settings is None:
            settings = load_settings()
        raw = settings.get("max_carrier", HARD_CARRIER_LIMIT)
        source = "settings.max_carrier"
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{source} must be an integer, got {raw!r}")
    if value < 1 or value > HARD_CARRIER_LIMIT:
        raise ConfigurationError(
            f"{source} must lie in 1..{HARD_CARRIER_LIMIT}, got {value}"
        )
    return value


def check_carrier_size(n, what="carrier"):
    limit = get_max_carrier()
    if n > limit:
        logger.warning(f"Refusing {what} of size {n} (limit {limit})")
        raise CarrierTooLarge(n, limit, what)


def get_workbench_config(settings=None):
    if settings is None:
        settings = load_settings()

    log_level = os.getenv("RMWB_LOG_LEVEL") or settings.get("log_level", "WARNING")
    log_file_env = os.getenv("RMWB_LOG_FILE")
    if log_file_env is not None:
        log_to_file = log_file_env.strip().lower() in _TRUTHY
    else:
        log_to_file = bool(settings.get("log_to_file", False))

    return {
        "max_carrier": get_max_carrier(settings),
        "log_level": str(log_level).upper(),
        "log_to_file": log_to_file,
        "sweep_max_size": int(settings.get("sweep_max_size", DEFAULT_SWEEP_SIZE)),
    }
