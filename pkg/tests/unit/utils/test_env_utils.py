"""
Unit tests for environment configuration.
"""
import os

import pytest

from mu_lab.core.constants import DEFAULT_DENSE_CAP, DEFAULT_ORACLE_BUDGET
from mu_lab.utils.env_utils import get_lab_config, load_env_file


class TestLoadEnvFile:
    """Tests for load_env_file."""

    def test_missing_file(self, tmp_path):
        """Test that a missing file yields no variables."""
        assert load_env_file(str(tmp_path / "absent.env")) == {}

    def test_reads_values(self, tmp_path):
        """Test KEY=value lines and comments."""
        path = tmp_path / "lab.env"
        path.write_text("# settings\nMU_LAB_WORKERS=4\n")
        assert load_env_file(str(path)) == {'MU_LAB_WORKERS': '4'}


class TestGetLabConfig:
    """Tests for get_lab_config."""

    def test_defaults(self, mocker):
        """Test the built-in defaults."""
        mocker.patch.dict(os.environ, {}, clear=True)
        lab_config = get_lab_config()
        assert lab_config['MU_LAB_DENSE_CAP'] == DEFAULT_DENSE_CAP
        assert lab_config['MU_LAB_ORACLE_BUDGET'] == DEFAULT_ORACLE_BUDGET
        assert lab_config['MU_LAB_WORKERS'] == 1
        assert lab_config['MU_LAB_LOG_LEVEL'] == 'WARNING'

    def test_environment_wins_over_file(self, tmp_path, mocker):
        """Test precedence: os.environ over the env file over defaults."""
        # Arrange
        mocker.patch.dict(os.environ, {'MU_LAB_WORKERS': '8', 'MU_LAB_LOG_LEVEL': 'error'}, clear=True)
        path = tmp_path / "lab.env"
        path.write_text("MU_LAB_WORKERS=2\nMU_LAB_ORACLE_BUDGET=1000\nMU_LAB_LOG_LEVEL=INFO\n")

        # Act
        lab_config = get_lab_config(str(path))

        # Assert
        assert lab_config['MU_LAB_WORKERS'] == 8
        assert lab_config['MU_LAB_ORACLE_BUDGET'] == 1000
        assert lab_config['MU_LAB_LOG_LEVEL'] == 'ERROR'

    def test_bad_values_fall_back(self, mocker):
        """Test that unusable values keep the defaults."""
        mocker.patch.dict(os.environ, {'MU_LAB_DENSE_CAP': 'lots', 'MU_LAB_WORKERS': '0',
                                       'MU_LAB_LOG_LEVEL': 'chatty'}, clear=True)
        lab_config = get_lab_config()
        assert lab_config['MU_LAB_DENSE_CAP'] == DEFAULT_DENSE_CAP
        assert lab_config['MU_LAB_WORKERS'] == 1
        assert lab_config['MU_LAB_LOG_LEVEL'] == 'WARNING'

    @pytest.mark.parametrize("raw, expected", [("debug", "DEBUG"), (" Info ", "INFO"), ("CRITICAL", "CRITICAL")])
    def test_log_level_from_env_file(self, tmp_path, mocker, raw, expected):
        """Test that MU_LAB_LOG_LEVEL in the env file is read case-insensitively."""
        # Arrange
        mocker.patch.dict(os.environ, {}, clear=True)
        path = tmp_path / "lab.env"
        path.write_text(f"MU_LAB_LOG_LEVEL={raw}\n")

        # Act
        lab_config = get_lab_config(str(path))

        # Assert
        assert lab_config['MU_LAB_LOG_LEVEL'] == expected
