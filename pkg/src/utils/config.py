"""
Application configuration and settings.
"""

import copy
import os
from pathlib import Path
from typing import Optional
import json
import logging

logger = logging.getLogger(__name__)


class AppConfig:
    """Application configuration manager."""

    # Default configuration
    DEFAULTS = {
        'seed': 0,
        'max_resamples': 3,
        'output_format': 'json',
        'sign': 'negated',
        'coefficient_bits': 31,  # generic coefficients drawn from [-2^31, 2^31] \ {0}
        'workers': 4,
        'logging': {
            'level': 'INFO',
            'to_file': False
        },
        'ledger': {
            'path': None
        },
        'batch': {
            'leaves_min': 4,
            'leaves_max': 10,
            'depth': '5'
        }
    }

    def __init__(self, config_path: Optional[Path] = None):
        """Initialize configuration.

        Args:
            config_path: Explicit configuration file. If None, uses default location.
        """
        self.config_path = Path(config_path) if config_path else self._get_config_path()
        self.config = self.load_config()

    def _get_config_path(self) -> Path:
        """Get path to configuration file."""
        if os.environ.get('TROPDISSIM_CONFIG'):
            return Path(os.environ['TROPDISSIM_CONFIG'])
        if os.environ.get('TROPDISSIM_DEV'):
            return Path('config.json')
        return data_dir() / 'config.json'

    def load_config(self) -> dict:
        """Load configuration from file or fall back to defaults."""
        if self.config_path.exists():
            try:
                with open(self.config_path, 'r', encoding='utf-8') as f:
                    loaded = json.load(f)
                    # Merge with defaults to handle missing keys
                    return self._merge_configs(copy.deepcopy(self.DEFAULTS), loaded)
            except (json.JSONDecodeError, IOError) as e:
                logger.error(f"Error loading config: {e}")

        return copy.deepcopy(self.DEFAULTS)

    def save_config(self):
        """Save current configuration to file."""
        try:
            self.config_path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.config_path, 'w', encoding='utf-8') as f:
                json.dump(self.config, f, indent=2)
            logger.info(f"Configuration saved to {self.config_path}")
        except IOError as e:
            logger.error(f"Error saving config: {e}")

    def _merge_configs(self, base: dict, override: dict) -> dict:
        """Recursively merge configuration dictionaries."""
        for key, value in override.items():
            if key in base and isinstance(base[key], dict) and isinstance(value, dict):
                base[key] = self._merge_configs(base[key], value)
            else:
                base[key] = value
        return base

    def get(self, key: str, default=None):
        """Get configuration value by key (supports dot notation)."""
        keys = key.split('.')
        value = self.config

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    def set(self, key: str, value, persist: bool = True):
        """Set configuration value by key (supports dot notation)."""
        keys = key.split('.')
        config = self.config

        # Navigate to the parent of the target key
        for k in keys[:-1]:
            if k not in config:
                config[k] = {}
            config = config[k]

        config[keys[-1]] = value
        if persist:
            self.save_config()

    @property
    def seed(self) -> int:
        return int(self.config.get('seed', 0))

    @property
    def max_resamples(self) -> int:
        return int(self.config.get('max_resamples', 3))

    @property
    def coefficient_bits(self) -> int:
        return int(self.config.get('coefficient_bits', 31))

    @property
    def workers(self) -> int:
        """Worker threads for batch verification."""
        return max(1, int(self.config.get('workers', 4)))

    @property
    def ledger_path(self) -> Path:
        """Location of the SQLite verification ledger."""
        configured = self.get('ledger.path')
        if configured:
            return Path(configured)
        if os.environ.get('TROPDISSIM_DEV'):
            return Path('data/ledger.db')
        return data_dir() / 'ledger.db'


def data_dir() -> Path:
    """Per-user directory for config, logs and the ledger."""
    return Path.home() / '.tropdissim'


# Global configuration instance
_config = None


def get_config() -> AppConfig:
    """Get global configuration instance."""
    global _config
    if _config is None:
        _config = AppConfig()
    return _config


def reset_config(config: Optional[AppConfig] = None):
    """Replace (or drop) the global configuration instance."""
    global _config
    _config = config
