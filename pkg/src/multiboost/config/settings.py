"""
Configuration management for multiboost.

Loads settings from:
1. config/settings.yaml (project defaults, or the file named by MULTIBOOST_CONFIG)
2. Environment variables (via .env file)

Usage:
    from multiboost.config.settings import get_settings

    settings = get_settings()
    rounds = settings.boosting.rounds
    threads = settings.runtime.threads
"""

import logging
import os
from functools import lru_cache
from pathlib import Path
from typing import Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from multiboost.core.errors import ConfigError

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).parent.parent.parent.parent
DEFAULT_CONFIG_PATH = PROJECT_ROOT / "config" / "settings.yaml"


class BoostingConfig(BaseModel):
    """Defaults for boosting runs."""

    rounds: int = Field(default=100, ge=1)
    eps_clamp: float = Field(default=1e-12, gt=0.0, lt=0.5)
    stop_on_eps_half: bool = True
    stop_on_perfect: bool = True


class DynamicsConfig(BaseModel):
    """Cycle detection and Birkhoff averaging."""

    cycle_tol: float = Field(default=1e-9, gt=0.0)
    birkhoff_periods: int = Field(
        default=200, ge=1, description="Whole periods averaged when checking convergence to the cycle mean"
    )


class DepthStudyConfig(BaseModel):
    """Depth study defaults, including the synthetic blob generator."""

    depths: list[int] = Field(default_factory=lambda: [1, 3, 6, 10])
    rounds: int = Field(default=60, ge=1)
    n_samples: int = Field(default=300, ge=2)
    n_features: int = Field(default=4, ge=1)
    n_classes: int = Field(default=4, ge=2)
    cluster_std: float = Field(default=2.5, gt=0.0)
    cycle_tol: float = Field(default=1e-9, gt=0.0)


class KernelDemoConfig(BaseModel):
    """Kernel boosting demo on a 1-D RBF prior."""

    m: int = Field(default=40, ge=2)
    length_scale: float = Field(default=0.2, gt=0.0)
    lam: float = Field(default=0.05, gt=0.0)
    sigma2: float = Field(default=0.5, gt=0.0)
    rounds: int = Field(default=10, ge=1)
    noise: float = Field(default=0.1, ge=0.0)


class RuntimeConfig(BaseModel):
    """Process-level settings."""

    threads: int = Field(default=1, ge=1, description="Worker pool cap for independent runs")
    log_level: str = "INFO"
    log_file: Optional[str] = Field(default=None, description="Also log to this file when set")


class Settings(BaseModel):
    """Global settings."""

    boosting: BoostingConfig = Field(default_factory=BoostingConfig)
    dynamics: DynamicsConfig = Field(default_factory=DynamicsConfig)
    depth_study: DepthStudyConfig = Field(default_factory=DepthStudyConfig)
    kernel_demo: KernelDemoConfig = Field(default_factory=KernelDemoConfig)
    runtime: RuntimeConfig = Field(default_factory=RuntimeConfig)

    project_root: Path = Field(default=PROJECT_ROOT)


def load_yaml_config(config_path: Optional[Path] = None) -> dict:
    """
    Load configuration from settings.yaml.

    Args:
        config_path: Path to a YAML file. If None, uses config/settings.yaml
            and falls back to built-in defaults when that file is absent.

    Returns:
        Dictionary with configuration data.

    Raises:
        FileNotFoundError: If an explicitly given file doesn't exist.
    """
    if config_path is None:
        if not DEFAULT_CONFIG_PATH.exists():
            logger.warning(f"No configuration at {DEFAULT_CONFIG_PATH}; using built-in defaults")
            return {}
        config_path = DEFAULT_CONFIG_PATH

    if not config_path.exists():
        raise FileNotFoundError(
            f"Configuration file not found: {config_path}\n"
            f"Check the MULTIBOOST_CONFIG environment variable or pass an existing YAML file."
        )

    with open(config_path, "r") as f:
        return yaml.safe_load(f) or {}


def load_env_variables() -> None:
    """
    Load environment variables from .env file.

    Looks for .env in the project root directory.
    """
    env_path = PROJECT_ROOT / ".env"

    if env_path.exists():
        load_dotenv(env_path)
    else:
        # Try to load from current directory as fallback
        load_dotenv()


def build_settings(yaml_config: dict) -> Settings:
    """
    Validate a raw configuration dict and apply environment overrides.

    Raises:
        ConfigError: If a section fails validation or an override is malformed.
    """
    runtime = dict(yaml_config.get("runtime") or {})
    threads = os.getenv("MULTIBOOST_THREADS")
    if threads is not None:
        try:
            runtime["threads"] = int(threads)
        except ValueError:
            raise ConfigError(f"MULTIBOOST_THREADS must be an integer, got {threads!r}") from None
    log_level = os.getenv("LOG_LEVEL")
    if log_level:
        runtime["log_level"] = log_level.upper()

    try:
        return Settings(**{**yaml_config, "runtime": runtime})
    except ValidationError as e:
        raise ConfigError(f"Invalid settings: {e}") from e


@lru_cache()
def get_settings() -> Settings:
    """
    Get settings (cached singleton).

    Loads configuration from:
    1. MULTIBOOST_CONFIG or config/settings.yaml
    2. Environment variables (.env file)

    Returns:
        Settings object with all configuration.

    Raises:
        FileNotFoundError: If MULTIBOOST_CONFIG names a missing file.
        ConfigError: If the configuration is invalid.

    Example:
        >>> settings = get_settings()
        >>> settings.dynamics.birkhoff_periods
        200
    """
    # Load environment variables first
    load_env_variables()

    override = os.getenv("MULTIBOOST_CONFIG")
    yaml_config = load_yaml_config(Path(override) if override else None)
    return build_settings(yaml_config)
