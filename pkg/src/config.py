"""
Centralized configuration for the pfg toolkit.

This module contains all configuration parameters used across the package,
including enumeration limits, sampler grids, campaign defaults and logging.
Values can be overridden through the environment or a local ``.env`` file.
"""

import os
from typing import Final

from dotenv import load_dotenv

from src.errors import ConfigError

load_dotenv()

INT_SETTINGS: Final[tuple[str, ...]] = ("PFG_MAX_ORDER", "PFG_WORKERS")
LOG_LEVELS: Final[tuple[str, ...]] = ("DEBUG", "INFO", "WARNING", "ERROR")


def _parse_positive(name: str, raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigError(f"{name} must be at least 1, got {value}")
    return value


def _env_int(name: str, default: int) -> int:
    # malformed values fall back here and are reported by validate_environment
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return _parse_positive(name, raw)
    except ConfigError:
        return default


def validate_environment() -> None:
    """
    Check the ``PFG_*`` settings of the current environment.

    Raises:
        ConfigError: If an integer setting is malformed or not positive, or
            ``PFG_LOG_LEVEL`` names an unknown level.
    """
    for name in INT_SETTINGS:
        raw = os.getenv(name)
        if raw is not None and raw.strip():
            _parse_positive(name, raw)
    level = os.getenv("PFG_LOG_LEVEL")
    if level is not None and level.upper() not in LOG_LEVELS:
        raise ConfigError(f"PFG_LOG_LEVEL must be one of {', '.join(LOG_LEVELS)}, got {level!r}")


# Group Configuration
MAX_ENUMERATION_ORDER: Final[int] = _env_int("PFG_MAX_ORDER", 24)
MAX_SYMMETRIC_DEGREE: Final[int] = 5  # caps S_n at order 120
BRUTE_FORCE_ORACLE_ORDER: Final[int] = 8  # subset oracle for enumeration checks
MAX_CARRIER_ORDER: Final[int] = 240  # direct products beyond this are refused
GROUP_CACHE_SIZE: Final[int] = 256  # products and subgroup lists kept per process

# Picture fuzzy set Configuration
SAMPLER_DENOMINATOR: Final[int] = 64  # grid for sampled layer values
RAW_DENOMINATOR: Final[int] = 8  # grid for uniform-random raw PFS
COMPLETENESS_PROBES: Final[int] = 1000
CAMPAIGN_COMPLETENESS_PROBES: Final[int] = 100  # per campaign instance

# Campaign Configuration
DEFAULT_TRIALS: Final[int] = 200
DEFAULT_SEED: Final[int] = 7
DEFAULT_CAMPAIGN_GROUPS: Final[tuple[str, ...]] = (
    "Z1",
    "Z2",
    "Z4",
    "Z6",
    "Z12",
    "V4",
    "S3",
    "D4",
    "D6",
    "Z2xZ4",
)
MAX_PRODUCT_ORDER: Final[int] = 72
MAX_THREAD_WORKERS: Final[int] = _env_int("PFG_WORKERS", 2)

# Logging
_level = os.getenv("PFG_LOG_LEVEL", "WARNING").upper()
LOG_LEVEL: Final[str] = _level if _level in LOG_LEVELS else "WARNING"
LOG_FORMAT: Final[str] = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATEFMT: Final[str] = "%Y-%m-%d %H:%M:%S"
