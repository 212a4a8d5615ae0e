"""
Configuration settings for mu_lab.
"""
import os

from mu_lab.utils.env_utils import get_lab_config

# Base directory
BASE_DIR = os.path.dirname(os.path.abspath(__file__))
PROJECT_ROOT = os.path.dirname(BASE_DIR)

# Path to environment file
DEFAULT_ENV_FILE = os.path.join(PROJECT_ROOT, 'config', 'mu_lab.env')

# Load the lab configuration
LAB_CONFIG = get_lab_config(DEFAULT_ENV_FILE)

# Logging configuration
LOG_CONFIG = {
    'default_level': LAB_CONFIG['MU_LAB_LOG_LEVEL'],
    'log_dir': os.path.join(PROJECT_ROOT, 'logs'),
    'log_file': None,  # Console only unless --log-file is given
    'log_format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
}

# Largest group order for which dense vectors are built; read at call time
DENSE_CAP = LAB_CONFIG['MU_LAB_DENSE_CAP']

# Work budget for exact_maximize: binomial(N, k) * N
ORACLE_BUDGET = LAB_CONFIG['MU_LAB_ORACLE_BUDGET']

# Default number of trial worker threads
DEFAULT_WORKERS = LAB_CONFIG['MU_LAB_WORKERS']
