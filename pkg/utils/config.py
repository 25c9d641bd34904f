"""Configuration management for setlearn.

Loads configuration from config.yaml and allows environment variable overrides.
"""

import copy
import logging
import os
import yaml
from typing import Any, Dict, Optional
from pathlib import Path

logger = logging.getLogger(__name__)

# Constants
DEFAULT_CONFIG_PATH = "config.yaml"
ENV_PREFIX = "SETLEARN_CONFIG_"

DEFAULTS: Dict[str, Any] = {
    'app': {
        'name': 'setlearn',
        'seed': 20240601,
    },
    'logging': {
        'level': 'INFO',
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        'file': None,
    },
    'worlds': {
        'example1_universe_multiplier': 10,
        'max_class_size': 64,
        'fresh_memo_limit': 1000000,
    },
    'learners': {
        'delta': 0.1,
        'semi_realizable_tol': 0.0,
        'surrogate_epsilon': 0.1,
    },
    'oracle': {
        'trials': 1000,
        'grid_step': 0.015625,
        'k_max': 6,
        'c_grid': [0.0, 0.5, 1.0, 2.0],
        'c_values': [0.25, 0.5, 1.0],
        'tolerance': 1e-9,
        'scalar_lb_n': 96,
        'scalar_lb_inputs': 100000,
    },
    'harness': {
        'workers': 4,
        'mc_inputs': 100000,
        'float_format': '.12g',
        'success_epsilon': 0.1,
    },
}


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class Config:
    """Application configuration manager.

    Loads configuration from a YAML file layered over built-in defaults and
    provides dot-notation access with environment variable overrides.
    """

    def __init__(self, config_path: str = DEFAULT_CONFIG_PATH) -> None:
        """Initialize configuration.

        Args:
            config_path: Path to YAML configuration file
        """
        self.config_path = config_path
        self._config: Dict[str, Any] = {}
        self._load_config()

    def _load_config(self) -> None:
        """Load configuration from YAML file."""
        config_file = Path(self.config_path)
        loaded: Dict[str, Any] = {}

        if config_file.exists():
            try:
                with open(config_file, 'r', encoding='utf-8') as f:
                    loaded = yaml.safe_load(f) or {}
            except yaml.YAMLError as e:
                logger.warning(f"Ignoring unreadable config file {config_file}: {e}")
                loaded = {}
            if not isinstance(loaded, dict):
                logger.warning(f"Config file {config_file} is not a mapping; using defaults")
                loaded = {}

        self._config = _deep_merge(DEFAULTS, loaded)

    def get(self, key_path: str, default: Any = None) -> Any:
        """Get configuration value by dot-notation path.

        Supports environment variable overrides using SETLEARN_CONFIG_<PATH>.

        Args:
            key_path: Dot-notation path (e.g., 'harness.workers')
            default: Default value if key not found

        Returns:
            Configuration value

        Examples:
            >>> config.get('harness.workers')
            4
            >>> config.get('oracle.k_max')
            6
        """
        env_key = f"{ENV_PREFIX}{key_path.upper().replace('.', '_')}"
        env_value = os.getenv(env_key)
        if env_value is not None:
            if env_value.lower() in ('true', 'false'):
                return env_value.lower() == 'true'
            try:
                return int(env_value)
            except ValueError:
                try:
                    return float(env_value)
                except ValueError:
                    return env_value

        keys = key_path.split('.')
        value: Any = self._config

        for key in keys:
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default

        return value

    def get_section(self, section: str) -> Dict[str, Any]:
        """Get entire configuration section, with environment overrides applied to its leaves.

        Args:
            section: Section name (e.g., 'harness', 'oracle')

        Returns:
            Configuration section dictionary
        """
        raw = self._config.get(section, {})
        if not isinstance(raw, dict):
            return {}
        return {key: self.get(f"{section}.{key}", value) for key, value in raw.items()}

    @property
    def all(self) -> Dict[str, Any]:
        """Get entire configuration dictionary."""
        return self._config


# Global configuration instance
_config: Optional[Config] = None


def get_config(config_path: str = DEFAULT_CONFIG_PATH) -> Config:
    """Get or create global configuration instance."""
    global _config
    if _config is None:
        _config = Config(config_path)
    return _config


def reload_config(config_path: str = DEFAULT_CONFIG_PATH) -> Config:
    """Reload configuration from file."""
    global _config
    _config = Config(config_path)
    return _config


def load_config(config_path: str = DEFAULT_CONFIG_PATH) -> Dict[str, Any]:
    """Load configuration and return as dictionary."""
    return get_config(config_path).all
