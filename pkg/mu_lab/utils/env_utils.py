"""
Environment variable utilities for mu_lab.
"""
import logging
import os
from pathlib import Path
from typing import Dict, Any, Optional

from dotenv import dotenv_values

from mu_lab.core.constants import DEFAULT_DENSE_CAP, DEFAULT_ORACLE_BUDGET
from mu_lab.utils.logging_config import DEFAULT_LOG_LEVEL, LOG_LEVEL_ENV_VAR, LOG_LEVELS, get_logger

# Set up logging
logger = get_logger(__name__)

DEFAULT_LOG_LEVEL_NAME = logging.getLevelName(DEFAULT_LOG_LEVEL)

# Integer settings and their defaults
LAB_DEFAULTS = {
    'MU_LAB_DENSE_CAP': DEFAULT_DENSE_CAP,
    'MU_LAB_ORACLE_BUDGET': DEFAULT_ORACLE_BUDGET,
    'MU_LAB_WORKERS': 1,
}

def load_env_file(env_file_path: str) -> Dict[str, str]:
    """
    Load environment variables from a file.

    Args:
        env_file_path: Path to the environment file

    Returns:
        A dictionary of environment variables (empty if the file is missing)
    """
    env_path = Path(env_file_path)
    if not env_path.exists():
        logger.debug(f"Environment file not found: {env_file_path}")
        return {}

    env_vars = {key: value for key, value in dotenv_values(env_path).items() if value is not None}
    logger.info(f"Loaded {len(env_vars)} environment variables from {env_file_path}")
    return env_vars

def _parse_positive_int(key: str, raw: Any, default: int) -> int:
    try:
        value = int(str(raw).strip())
    except ValueError:
        logger.warning(f"Ignoring non-integer value {raw!r} for {key}; using {default}")
        return default
    if value <= 0:
        logger.warning(f"Ignoring non-positive value {value} for {key}; using {default}")
        return default
    return value

def _parse_log_level(raw: Any) -> str:
    level = str(raw).strip().upper()
    if level not in LOG_LEVELS:
        logger.warning(f"Ignoring unknown log level {raw!r} for {LOG_LEVEL_ENV_VAR}; using {DEFAULT_LOG_LEVEL_NAME}")
        return DEFAULT_LOG_LEVEL_NAME
    return level

def get_lab_config(env_file_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Get lab settings from defaults, an optional env file and the process environment.

    Later sources win: defaults, then the env file, then os.environ.

    Args:
        env_file_path: Optional path to the environment file

    Returns:
        A dictionary keyed by the MU_LAB_* setting names; the log level is an
        upper-case level name, every other value a positive integer
    """
    lab_config: Dict[str, Any] = dict(LAB_DEFAULTS)
    lab_config[LOG_LEVEL_ENV_VAR] = DEFAULT_LOG_LEVEL_NAME

    file_vars = load_env_file(env_file_path) if env_file_path else {}
    for key, default in LAB_DEFAULTS.items():
        raw = os.environ.get(key, file_vars.get(key))
        if raw is not None:
            lab_config[key] = _parse_positive_int(key, raw, default)

    raw_level = os.environ.get(LOG_LEVEL_ENV_VAR, file_vars.get(LOG_LEVEL_ENV_VAR))
    if raw_level is not None:
        lab_config[LOG_LEVEL_ENV_VAR] = _parse_log_level(raw_level)

    return lab_config
