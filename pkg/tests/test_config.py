"""
Unit tests for rmwb configuration and exceptions
Run with: python -m pytest tests/test_config.py -v
"""
import os
import sys
import logging
import pytest
from unittest.mock import patch, mock_open

# Add src to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))


class TestConfig:
    """Test configuration module"""

    def test_load_settings(self):
        """Test settings loading"""
        from core.config import load_settings

        with patch('builtins.open', mock_open(read_data='{"max_carrier": 12}')):
            with patch('os.path.exists', return_value=True):
                settings = load_settings()
                assert settings == {"max_carrier": 12}

    def test_load_settings_file_not_found(self):
        """Test settings loading when file doesn't exist"""
        from core.config import load_settings

        with patch('os.path.exists', return_value=False):
            assert load_settings() == {}

    def test_load_settings_broken_json(self):
        """Unreadable settings fall back to an empty dict"""
        from core.config import load_settings

        with patch('builtins.open', mock_open(read_data='{not json')):
            with patch('os.path.exists', return_value=True):
                assert load_settings() == {}

    def test_max_carrier_default(self, monkeypatch):
        """Without env or settings the cap is 64"""
        from core.config import get_max_carrier

        monkeypatch.delenv("RMWB_MAX_CARRIER", raising=False)
        assert get_max_carrier({}) == 64

    def test_max_carrier_env_wins(self, monkeypatch):
        """The environment overrides settings"""
        from core.config import get_max_carrier

        monkeypatch.setenv("RMWB_MAX_CARRIER", "10")
        assert get_max_carrier({"max_carrier": 20}) == 10

    def test_max_carrier_from_settings(self, monkeypatch):
        from core.config import get_max_carrier

        monkeypatch.delenv("RMWB_MAX_CARRIER", raising=False)
        assert get_max_carrier({"max_carrier": 20}) == 20

    @pytest.mark.parametrize("raw", ["0", "65", "many"])
    def test_max_carrier_rejects_bad_values(self, monkeypatch, raw):
        """Values outside 1..64 are configuration errors"""
        from core.config import get_max_carrier
        from core.exceptions import ConfigurationError

        monkeypatch.setenv("RMWB_MAX_CARRIER", raw)
        with pytest.raises(ConfigurationError):
            get_max_carrier({})

    def test_check_carrier_size(self, mocker):
        """Oversized carriers are refused"""
        from core import config
        from core.exceptions import CarrierTooLarge

        mocker.patch.object(config, "get_max_carrier", return_value=5)
        config.check_carrier_size(5)
        with pytest.raises(CarrierTooLarge) as info:
            config.check_carrier_size(6, "product")
        assert info.value.limit == 5
        assert "product" in info.value.user_message

    def test_workbench_config_defaults(self, monkeypatch):
        """Test workbench config with defaults"""
        from core.config import get_workbench_config

        for var in ("RMWB_MAX_CARRIER", "RMWB_LOG_LEVEL", "RMWB_LOG_FILE"):
            monkeypatch.delenv(var, raising=False)
        config = get_workbench_config({})
        assert config == {
            "max_carrier": 64,
            "log_level": "WARNING",
            "log_to_file": False,
            "sweep_max_size": 4,
        }

    def test_workbench_config_env(self, monkeypatch):
        from core.config import get_workbench_config

        monkeypatch.setenv("RMWB_LOG_LEVEL", "debug")
        monkeypatch.setenv("RMWB_LOG_FILE", "yes")
        config = get_workbench_config({"log_level": "ERROR", "sweep_max_size": 3})
        assert config["log_level"] == "DEBUG"
        assert config["log_to_file"] is True
        assert config["sweep_max_size"] == 3

    def test_setup_logging_level(self, mocker):
        """Explicit levels bypass settings"""
        from core import config

        mocker.patch.object(config, "load_settings", return_value={})
        config.setup_logging(level=logging.INFO, log_to_file=False)
        assert logging.getLogger().level == logging.INFO

    def test_load_environment(self, mocker):
        """The .env file next to the repository root is read without override"""
        from core import config

        loader = mocker.patch.object(config, "load_dotenv", return_value=True)
        assert config.load_environment() is True
        loader.assert_called_once_with(config.ENV_PATH, override=False)


class TestExceptions:
    """Test exception hierarchy"""

    def test_user_message_defaults_to_message(self):
        from core.exceptions import WorkbenchError

        err = WorkbenchError("technical")
        assert err.user_message == "technical"
        assert str(err) == "technical"

    def test_parse_error_line_number(self):
        from core.exceptions import ParseError, WorkbenchError

        err = ParseError("bad token", 7)
        assert isinstance(err, WorkbenchError)
        assert err.line_no == 7
        assert "7" in err.user_message

    def test_cycle_detected(self):
        from core.exceptions import CycleDetected

        err = CycleDetected(["a", "b", "a"])
        assert err.cycle == ["a", "b", "a"]
        assert "a < b < a" in str(err)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
