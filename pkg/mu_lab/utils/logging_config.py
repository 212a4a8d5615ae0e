"""
Centralized logging configuration for mu_lab.
"""
import os
import logging
import sys

# Default log level is WARNING so CLI output stays clean; override with MU_LAB_LOG_LEVEL
DEFAULT_LOG_LEVEL = logging.WARNING
LOG_LEVEL_ENV_VAR = 'MU_LAB_LOG_LEVEL'
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_LEVELS = {
    'DEBUG': logging.DEBUG,
    'INFO': logging.INFO,
    'WARNING': logging.WARNING,
    'ERROR': logging.ERROR,
    'CRITICAL': logging.CRITICAL
}

def get_log_level():
    """Get the log level from environment variable or use default."""
    env_level = os.environ.get(LOG_LEVEL_ENV_VAR, '').upper()
    if env_level in LOG_LEVELS:
        return LOG_LEVELS[env_level]
    return DEFAULT_LOG_LEVEL

def configure_logging(level=None, log_file=None):
    """
    Configure logging for the application.

    Logs go to stderr so that stdout carries only command output.

    Args:
        level: Log level to use (DEBUG, INFO, WARNING, ERROR, CRITICAL)
              If None, uses environment variable MU_LAB_LOG_LEVEL or defaults to WARNING
        log_file: Optional file path to write logs to (in addition to stderr)

    Returns:
        The configured root logger
    """
    if level is None:
        level = get_log_level()
    elif isinstance(level, str) and level.upper() in LOG_LEVELS:
        level = LOG_LEVELS[level.upper()]

    handlers = [logging.StreamHandler(sys.stderr)]

    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=level,
        format=LOG_FORMAT,
        handlers=handlers,
        force=True
    )

    # Loggers created at import time carry their own level
    for logger_name in logging.root.manager.loggerDict:
        if logger_name.startswith('mu_lab'):
            logging.getLogger(logger_name).setLevel(level)

    logging.getLogger().setLevel(level)
    return logging.getLogger()

def get_logger(name):
    """
    Get a logger with the specified name.

    Args:
        name: Name for the logger, typically __name__ of the calling module

    Returns:
        A logger instance
    """
    logger = logging.getLogger(name)

    env_level = os.environ.get(LOG_LEVEL_ENV_VAR, '').upper()
    if env_level in LOG_LEVELS:
        logger.setLevel(LOG_LEVELS[env_level])

    return logger
