"""
Unit tests for configuration loading.
"""

import pytest

from multiboost.config import build_settings, get_settings, load_yaml_config
from multiboost.config.settings import PROJECT_ROOT
from multiboost.core import ConfigError


@pytest.fixture(autouse=True)
def clear_settings_cache(monkeypatch):
    monkeypatch.delenv("MULTIBOOST_CONFIG", raising=False)
    monkeypatch.delenv("MULTIBOOST_THREADS", raising=False)
    monkeypatch.delenv("LOG_LEVEL", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


class TestSettings:
    """Test settings defaults, files and environment overrides."""

    def test_project_defaults(self):
        """Test the shipped settings.yaml loads."""
        settings = get_settings()
        assert settings.boosting.rounds == 100
        assert settings.depth_study.depths == [1, 3, 6, 10]
        assert settings.kernel_demo.lam == pytest.approx(0.05)
        assert settings.project_root == PROJECT_ROOT

    def test_cached(self):
        """Test get_settings returns the same object until the cache is cleared."""
        assert get_settings() is get_settings()

    def test_config_override(self, tmp_path, monkeypatch):
        """Test MULTIBOOST_CONFIG selects another file."""
        path = tmp_path / "settings.yaml"
        path.write_text("boosting:\n  rounds: 7\ndynamics:\n  cycle_tol: 1.0e-6\n")
        monkeypatch.setenv("MULTIBOOST_CONFIG", str(path))
        settings = get_settings()
        assert settings.boosting.rounds == 7
        assert settings.dynamics.cycle_tol == pytest.approx(1e-6)
        assert settings.dynamics.birkhoff_periods == 200

    def test_missing_override_file(self, tmp_path, monkeypatch):
        """Test an explicit missing file raises."""
        monkeypatch.setenv("MULTIBOOST_CONFIG", str(tmp_path / "missing.yaml"))
        with pytest.raises(FileNotFoundError, match="MULTIBOOST_CONFIG"):
            get_settings()

    def test_empty_file(self, tmp_path):
        """Test an empty YAML file gives an empty dict."""
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert load_yaml_config(path) == {}

    def test_env_overrides(self, monkeypatch):
        """Test MULTIBOOST_THREADS and LOG_LEVEL override the runtime section."""
        monkeypatch.setenv("MULTIBOOST_THREADS", "4")
        monkeypatch.setenv("LOG_LEVEL", "debug")
        settings = build_settings({"runtime": {"threads": 1}})
        assert settings.runtime.threads == 4
        assert settings.runtime.log_level == "DEBUG"

    def test_bad_threads(self, monkeypatch):
        """Test a non-integer thread count."""
        monkeypatch.setenv("MULTIBOOST_THREADS", "many")
        with pytest.raises(ConfigError, match="MULTIBOOST_THREADS"):
            build_settings({})

    def test_invalid_section(self):
        """Test validation failures become ConfigError."""
        with pytest.raises(ConfigError, match="Invalid settings"):
            build_settings({"boosting": {"rounds": 0}})
