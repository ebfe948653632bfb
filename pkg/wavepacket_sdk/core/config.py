"""
SDK Configuration Management

This module holds every numerical tolerance, capacity limit and runtime setting
used by the Wave Packet SDK. Values come from built-in defaults, an environment
profile, an optional dictionary and an optional YAML/JSON file, in that order.

Features:
- Dataclass configuration with documented defaults
- Environment profiles (development, testing, production)
- Dictionary and YAML/JSON file loading with type conversion
- Validation that clamps out-of-range values and rejects non-positive tolerances
- Opt-in environment variable loading for library users (``from_env``)
"""

import os
import json
import logging
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Dict, Any, Optional

import yaml

from .exceptions import ConfigurationError

ENV_PREFIX = 'WAVEPACKET_'

TOLERANCE_KEYS = (
    'admissibility_tol',
    'reconstruction_tol',
    'singular_rel',
    'prune_rel',
    'crosscheck_tol',
    'gram_tol',
)

VALID_LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')
VALID_LOG_FORMATS = ('simple', 'structured', 'json')
VALID_ENVIRONMENTS = ('development', 'testing', 'production')

# Gauss-Hermite nodes from the tridiagonal eigenproblem stay accurate up to here.
MAX_QUADRATURE_NODES = 64


@dataclass
class WavePacketConfig:
    """
    Configuration for tolerances, caps and runtime behaviour of the SDK.

    Tolerances are relative to the magnitude of the quantity being compared
    unless stated otherwise. Caps bound the size of the objects the SDK builds.
    """

    # Numerical tolerances
    admissibility_tol: float = 1e-10
    reconstruction_tol: float = 1e-12
    singular_rel: float = 1e-12
    prune_rel: float = 1e-14
    crosscheck_tol: float = 1e-9
    gram_tol: float = 1e-8

    # Capacity limits
    order_cap: int = 12
    factorial_cap: int = 20
    condition_cap: float = 1e4
    max_generation_retries: int = 100
    quadrature_margin: int = 3
    max_nodes: int = MAX_QUADRATURE_NODES

    # Performance
    max_workers: int = 4

    # Logging
    log_level: str = 'INFO'
    log_format: str = 'structured'
    log_file: Optional[str] = None
    log_max_size: int = 10 * 1024 * 1024
    log_backup_count: int = 5

    environment: str = 'development'

    def __init__(
        self,
        config_dict: Optional[Dict[str, Any]] = None,
        environment: Optional[str] = None,
        config_file: Optional[str] = None
    ):
        """
        Initialize configuration from defaults, profile, dictionary and file.

        Args:
            config_dict: Optional overrides keyed by field name
            environment: Profile name; defaults to ``development``
            config_file: Optional YAML or JSON file with overrides
        """
        for config_field in fields(self):
            setattr(self, config_field.name, config_field.default)

        if environment:
            self.environment = environment
        elif config_dict and 'environment' in config_dict:
            self.environment = str(config_dict['environment'])

        self._load_default_config()

        if config_dict:
            self._load_dict_config(config_dict)

        if config_file:
            self._load_file_config(config_file)

        self._validate_config()

    @classmethod
    def from_env(cls, config_dict: Optional[Dict[str, Any]] = None) -> 'WavePacketConfig':
        """
        Build a configuration that also honours ``WAVEPACKET_*`` environment
        variables. Environment values override ``config_dict``.

        The command-line interface never calls this.
        """
        merged = merge_configs(config_dict or {}, _read_environment())
        return cls(merged, config_file=os.getenv(f'{ENV_PREFIX}CONFIG_FILE'))

    def _load_default_config(self):
        """
        Apply the profile for the selected environment.
        Profiles only touch logging and worker settings, never tolerances.
        """
        defaults = {
            'development': {
                'log_level': 'DEBUG',
                'max_workers': 2,
            },
            'testing': {
                'log_level': 'WARNING',
                'max_workers': 1,
            },
            'production': {
                'log_level': 'INFO',
                'max_workers': 4,
            }
        }

        env_defaults = defaults.get(self.environment, defaults['development'])

        for key, value in env_defaults.items():
            setattr(self, key, value)

    def _load_dict_config(self, config_dict: Dict[str, Any]):
        """
        Load configuration values from a dictionary with type conversion.

        Args:
            config_dict: Configuration dictionary to merge
        """
        field_types = {f.name: type(f.default) for f in fields(self)}

        for key, value in config_dict.items():
            if key not in field_types:
                logging.warning(f"Unknown configuration key: {key}")
                continue

            expected = field_types[key]
            if value is not None and expected is not type(None) and not isinstance(value, expected):
                try:
                    if expected is bool:
                        value = str(value).lower() in ('true', '1', 'yes', 'on')
                    elif expected is int:
                        value = int(value)
                    elif expected is float:
                        value = float(value)
                    else:
                        value = expected(value)
                except (ValueError, TypeError) as e:
                    raise ConfigurationError(
                        f"Cannot convert configuration value for {key}: {value!r}",
                        config_key=key,
                        inner_exception=e
                    )

            setattr(self, key, value)

    def _load_file_config(self, config_file: str):
        """
        Load configuration from a YAML or JSON file.

        Args:
            config_file: Path to configuration file
        """
        try:
            config_data = load_config_from_file(config_file)
        except FileNotFoundError as e:
            raise ConfigurationError(
                f"Configuration file not found: {config_file}",
                config_file=config_file,
                inner_exception=e
            )
        except ValueError as e:
            raise ConfigurationError(
                str(e),
                config_file=config_file,
                inner_exception=e
            )

        self._load_dict_config(config_data)

    def _validate_config(self):
        """
        Validate configuration values and apply constraints.
        Non-positive tolerances are rejected; integer limits are clamped with a warning.
        """
        for key in TOLERANCE_KEYS:
            value = getattr(self, key)
            if not value > 0:
                raise ConfigurationError(
                    f"Tolerance {key} must be strictly positive, got {value}",
                    config_key=key
                )

        if not self.condition_cap > 1:
            raise ConfigurationError(
                f"condition_cap must exceed 1, got {self.condition_cap}",
                config_key='condition_cap'
            )

        if self.log_level.upper() not in VALID_LOG_LEVELS:
            logging.warning(f"Invalid log level: {self.log_level}, defaulting to INFO")
            self.log_level = 'INFO'
        else:
            self.log_level = self.log_level.upper()

        if self.log_format not in VALID_LOG_FORMATS:
            logging.warning(f"Invalid log format: {self.log_format}, defaulting to structured")
            self.log_format = 'structured'

        if self.max_workers < 1:
            logging.warning(f"Invalid max_workers: {self.max_workers}, setting to 1")
            self.max_workers = 1
        elif self.max_workers > 32:
            logging.warning(f"Max workers too high: {self.max_workers}, limiting to 32")
            self.max_workers = 32

        if self.factorial_cap < 1:
            logging.warning(f"Invalid factorial_cap: {self.factorial_cap}, setting to 1")
            self.factorial_cap = 1

        if self.order_cap < 0:
            logging.warning(f"Invalid order_cap: {self.order_cap}, setting to 0")
            self.order_cap = 0
        elif self.order_cap > self.factorial_cap:
            logging.warning(
                f"order_cap {self.order_cap} exceeds factorial_cap {self.factorial_cap}, limiting"
            )
            self.order_cap = self.factorial_cap

        if self.max_generation_retries < 1:
            logging.warning(f"Invalid max_generation_retries: {self.max_generation_retries}, setting to 1")
            self.max_generation_retries = 1

        if self.quadrature_margin < 1:
            logging.warning(f"Quadrature margin too low: {self.quadrature_margin}, setting to 1")
            self.quadrature_margin = 1

        if self.max_nodes < 1 or self.max_nodes > MAX_QUADRATURE_NODES:
            logging.warning(f"max_nodes out of range: {self.max_nodes}, limiting to {MAX_QUADRATURE_NODES}")
            self.max_nodes = MAX_QUADRATURE_NODES

        if self.environment not in VALID_ENVIRONMENTS:
            logging.warning(f"Invalid environment: {self.environment}, defaulting to development")
            self.environment = 'development'

    def with_overrides(self, **overrides: Any) -> 'WavePacketConfig':
        """
        Return a new configuration with some fields replaced.
        Overrides whose value is None are ignored.
        """
        merged = self.to_dict()
        merged.update({k: v for k, v in overrides.items() if v is not None})
        return WavePacketConfig(merged, environment=self.environment)

    def get_logging_config(self) -> Dict[str, Any]:
        """Get logging configuration as a dictionary."""
        return {
            'level': self.log_level,
            'format_type': self.log_format,
            'file_path': self.log_file,
            'max_size': self.log_max_size,
            'backup_count': self.log_backup_count
        }

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary format."""
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value by key with default fallback.

        Args:
            key: Configuration key
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        return getattr(self, key, default)


def _read_environment() -> Dict[str, Any]:
    """Collect ``WAVEPACKET_<FIELD>`` variables as raw strings keyed by field name."""
    values = {}
    for config_field in fields(WavePacketConfig):
        env_value = os.getenv(f'{ENV_PREFIX}{config_field.name.upper()}')
        if env_value is not None:
            values[config_field.name] = env_value
    return values


def load_config_from_file(file_path: str) -> Dict[str, Any]:
    """
    Load configuration from a YAML or JSON file.

    Args:
        file_path: Path to configuration file

    Returns:
        Configuration dictionary

    Raises:
        FileNotFoundError: If the file does not exist
        ValueError: If the file cannot be parsed or is not a mapping
    """
    config_path = Path(file_path)

    if not config_path.exists():
        raise FileNotFoundError(f"Configuration file not found: {file_path}")

    try:
        with open(config_path, 'r', encoding='utf-8') as f:
            if config_path.suffix.lower() in ('.yml', '.yaml'):
                config = yaml.safe_load(f) or {}
            elif config_path.suffix.lower() == '.json':
                config = json.load(f) or {}
            else:
                raise ValueError(f"Unsupported configuration file format: {config_path.suffix}")
    except (json.JSONDecodeError, yaml.YAMLError, IOError) as e:
        raise ValueError(f"Failed to parse configuration file {file_path}: {e}")

    if not isinstance(config, dict):
        raise ValueError(f"Configuration file {file_path} must contain a mapping")

    return config


def merge_configs(*configs: Dict[str, Any]) -> Dict[str, Any]:
    """
    Merge multiple configuration dictionaries with deep merging.
    Later configurations override earlier ones.

    Args:
        *configs: Configuration dictionaries to merge

    Returns:
        Merged configuration dictionary
    """
    result: Dict[str, Any] = {}

    for config in configs:
        if not isinstance(config, dict):
            continue

        for key, value in config.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = merge_configs(result[key], value)
            else:
                result[key] = value

    return result
