"""
Liptrop Run Configuration

Loads run settings from YAML (config/liptrop_config.yaml by default),
applies environment overrides and produces an immutable RunConfig.

Usage:
    from src.liptrop.config import LiptropConfig

    config = LiptropConfig('config/liptrop_config.yaml')
    run_config = config.to_run_config(seed=7)
"""

import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Optional

import yaml

from .errors import ConfigError

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / 'config' / 'liptrop_config.yaml'

DEFAULT_ORDER_CAP = 64
ORDER_CAP_ENV = 'LIPTROP_ORDER_CAP'
SEED_ENV = 'LIPTROP_SEED'
LOG_LEVEL_ENV = 'LIPTROP_LOG_LEVEL'

VALID_FORMATS = ['text', 'json']
VALID_LOG_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR']


@dataclass(frozen=True)
class RunConfig:
    """Settings for a single CLI command; the seed fixes every sampled value."""

    seed: int = 0
    samples: int = 1000
    order_cap: int = DEFAULT_ORDER_CAP
    max_denominator: int = 16
    value_bound: int = 4
    brute_force_max_order: int = 8
    output: Optional[str] = None
    format: str = 'text'
    workers: int = 1
    log_level: str = 'INFO'

    def __post_init__(self):
        if self.samples < 1:
            raise ConfigError(f"samples must be positive, got {self.samples}")
        if self.order_cap < 1:
            raise ConfigError(f"order_cap must be positive, got {self.order_cap}")
        if self.max_denominator < 1:
            raise ConfigError(f"max_denominator must be positive, got {self.max_denominator}")
        if self.value_bound < 1:
            raise ConfigError(f"value_bound must be positive, got {self.value_bound}")
        if self.workers < 1:
            raise ConfigError(f"workers must be positive, got {self.workers}")
        if self.format not in VALID_FORMATS:
            raise ConfigError(f"Invalid format: '{self.format}'. Must be one of {VALID_FORMATS}")
        if self.log_level.upper() not in VALID_LOG_LEVELS:
            raise ConfigError(f"Invalid log_level: '{self.log_level}'. Must be one of {VALID_LOG_LEVELS}")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def with_overrides(self, **overrides: Any) -> 'RunConfig':
        """Return a copy with the non-None overrides applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


def _env_int(name: str) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == '':
        return None
    try:
        return int(raw)
    except ValueError as e:
        raise ConfigError(f"Environment variable {name} must be an integer, got '{raw}'") from e


def resolve_order_cap(explicit: Optional[int] = None) -> int:
    """
    Decide the group-order cap.

    Args:
        explicit: Cap passed by the caller, wins when given

    Returns:
        explicit, else LIPTROP_ORDER_CAP, else the default of 64
    """
    if explicit is not None:
        cap = explicit
    else:
        env_cap = _env_int(ORDER_CAP_ENV)
        cap = env_cap if env_cap is not None else DEFAULT_ORDER_CAP
    if cap < 1:
        raise ConfigError(f"order cap must be positive, got {cap}")
    return cap


class LiptropConfig:
    """Configuration loaded from a liptrop YAML file."""

    def __init__(self, config_path: Optional[str] = None):
        """Initialize configuration from YAML file (defaults when the default file is absent)."""
        path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH

        if config_path is None and not path.exists():
            logging.debug(f"No config file at {path}, using built-in defaults")
            self.config: dict[str, Any] = {}
        else:
            try:
                with open(path, 'rb') as f:
                    self.config = yaml.safe_load(f) or {}
            except yaml.YAMLError as e:
                raise ConfigError(f"Config file {path} is not valid YAML: {e}") from e

        if not isinstance(self.config, dict):
            raise ConfigError(f"Config file {path} must contain a mapping at top level")

        self.sampling = self.config.get('sampling', {})
        self.limits = self.config.get('limits', {})
        self.output = self.config.get('output', {})
        self.execution = self.config.get('execution', {})
        self.monitoring = self.config.get('monitoring', {})

    def to_run_config(self, **overrides: Any) -> RunConfig:
        """
        Build a RunConfig: defaults < YAML < environment < overrides.

        Args:
            **overrides: CLI-level values; None means "not given"

        Returns:
            Validated RunConfig
        """
        values: dict[str, Any] = {
            'seed': self.sampling.get('seed'),
            'samples': self.sampling.get('samples'),
            'max_denominator': self.sampling.get('max_denominator'),
            'value_bound': self.sampling.get('value_bound'),
            'order_cap': self.limits.get('order_cap'),
            'brute_force_max_order': self.limits.get('brute_force_max_order'),
            'format': self.output.get('format'),
            'output': self.output.get('path'),
            'workers': self.execution.get('workers'),
            'log_level': self.monitoring.get('log_level'),
        }

        env_cap = _env_int(ORDER_CAP_ENV)
        if env_cap is not None:
            values['order_cap'] = env_cap
        env_seed = _env_int(SEED_ENV)
        if env_seed is not None:
            values['seed'] = env_seed
        if os.environ.get(LOG_LEVEL_ENV):
            values['log_level'] = os.environ[LOG_LEVEL_ENV]

        values.update({k: v for k, v in overrides.items() if v is not None})

        try:
            return RunConfig().with_overrides(**values)
        except TypeError as e:
            raise ConfigError(f"Invalid configuration value: {e}") from e
