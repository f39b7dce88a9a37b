import os
from copy import deepcopy
from pathlib import Path
from typing import Any, List, Optional

import yaml

from .constants import (
    ANGULAR_TOL,
    BOX_DEPTH_COUNT,
    BOX_THETA_COUNT,
    COUNTEREXAMPLE_CEILING,
    COUNTEREXAMPLE_GRID_STEP,
    COVER_SAMPLES,
    DEFAULT_BALL_RADIUS,
    DEFAULT_LOG_LEVEL,
    DEFAULT_MAX_LOG_FILES,
    DEFAULT_MC_SAMPLES,
    DEFAULT_N_I,
    DEFAULT_N_R,
    DEFAULT_N_THETA,
    DEFAULT_SEED,
    DEFAULT_TUBE_RADIUS,
    INTRINSIC_TOL,
    MC_CHUNK_SIZE,
    REDUCTION_TOL,
    STABILIZATION_TOL,
    TAU_REAL,
    TUBE_ANGLE_COUNT,
    TUBE_AXIS_COUNT,
    TUBE_MODULI,
    WORKERS_ENV,
)

# Project-specific qcarleson directory
QCARLESON_DIR = Path(".qcarleson")
CONFIG_PATH = QCARLESON_DIR / "config.yaml"


class ConfigInvalid(ValueError):
    """Configuration or suite selection that cannot be used."""


# Default quadrature and scan grids
DEFAULT_GRIDS = {
    "n_i": DEFAULT_N_I,                 # sampled imaginary units for sup over the sphere
    "n_theta": DEFAULT_N_THETA,         # starting angular nodes
    "n_r": DEFAULT_N_R,                 # radial node budget (Bergman)
    "box_thetas": BOX_THETA_COUNT,
    "box_depths": BOX_DEPTH_COUNT,
    "tube_moduli": list(TUBE_MODULI),
    "tube_angles": TUBE_ANGLE_COUNT,
    "tube_axes": TUBE_AXIS_COUNT,
    "tube_radius": DEFAULT_TUBE_RADIUS,
    "ball_radius": DEFAULT_BALL_RADIUS,
}

# Default tolerances
DEFAULT_TOLERANCES = {
    "tau_real": TAU_REAL,
    "intrinsic": INTRINSIC_TOL,
    "stabilization": STABILIZATION_TOL,
    "angular": ANGULAR_TOL,
    "reduction": REDUCTION_TOL,
}

# Default Monte Carlo settings
DEFAULT_MONTE_CARLO = {
    "samples": DEFAULT_MC_SAMPLES,
    "seed": DEFAULT_SEED,
    "chunk_size": MC_CHUNK_SIZE,
    "cover_samples": COVER_SAMPLES,
}

# Default suite settings
DEFAULT_SUITE = {
    "workers": min(8, os.cpu_count() or 1),
    "output_dir": "qcarleson-report",
    "counterexample": {
        "r": 0.3,
        "eps": 0.5,
        "tubes": 8,
        "grid_step": COUNTEREXAMPLE_GRID_STEP,
        "ceiling": COUNTEREXAMPLE_CEILING,
    },
}

# Default logging settings
DEFAULT_LOGGING = {
    "enabled": True,                # Master switch for file logging
    "level": DEFAULT_LOG_LEVEL,     # DEBUG, INFO, WARNING, ERROR
    "file": False,                  # Log to file (.qcarleson/logs/)
    "console": True,
    "max_files": DEFAULT_MAX_LOG_FILES,
}

_SECTIONS = {
    "grids": DEFAULT_GRIDS,
    "tolerances": DEFAULT_TOLERANCES,
    "monte_carlo": DEFAULT_MONTE_CARLO,
    "suite": DEFAULT_SUITE,
    "logging": DEFAULT_LOGGING,
}


def _merge(defaults: dict, overrides: dict) -> dict:
    result = deepcopy(defaults)
    for key, value in (overrides or {}).items():
        if isinstance(value, dict) and isinstance(result.get(key), dict):
            result[key] = _merge(result[key], value)
        else:
            result[key] = value
    return result


class ConfigManager:
    """Reads and writes .qcarleson/config.yaml, merging in the defaults above."""

    def __init__(self, path: Optional[Path] = None):
        self.path = Path(path) if path is not None else CONFIG_PATH

    def load(self) -> dict:
        """Load configuration from config.yaml"""
        if not self.path.exists():
            return {}
        try:
            config = yaml.safe_load(self.path.read_text()) or {}
        except yaml.YAMLError as e:
            raise ConfigInvalid(f"Cannot parse {self.path}: {e}") from e
        if not isinstance(config, dict):
            raise ConfigInvalid(f"{self.path} must hold a mapping")
        return config

    def save(self, config: dict):
        """Save configuration to config.yaml"""
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self.path.write_text(yaml.dump(config, allow_unicode=True, sort_keys=False))

    def get_value(self, path: str) -> Any:
        """
        Get a config value by dot-notation path, defaults included.

        Example: get_value("monte_carlo.seed")
        """
        value = self.effective()
        for key in path.split("."):
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return None
        return value

    def set_value(self, path: str, value: Any) -> bool:
        """
        Set a config value by dot-notation path.

        Example: set_value("grids.n_i", "400")
        """
        config = self.load()
        keys = path.split(".")

        current = config
        for key in keys[:-1]:
            if not isinstance(current.get(key), dict):
                current[key] = {}
            current = current[key]

        current[keys[-1]] = self._parse_value(value)
        self.save(config)
        return True

    def unset_value(self, path: str) -> bool:
        """Remove a stored override; returns False when nothing was stored."""
        config = self.load()
        keys = path.split(".")
        current = config
        for key in keys[:-1]:
            if not isinstance(current.get(key), dict):
                return False
            current = current[key]
        if keys[-1] not in current:
            return False
        del current[keys[-1]]
        self.save(config)
        return True

    def _parse_value(self, value: Any) -> Any:
        """Parse string value to appropriate type."""
        if not isinstance(value, str):
            return value
        lowered = value.lower()
        if lowered in ("true", "yes", "on"):
            return True
        if lowered in ("false", "no", "off"):
            return False
        if lowered in ("null", "none", "~"):
            return None
        if "," in value:
            return [self._parse_value(part.strip()) for part in value.split(",")]
        try:
            return int(value)
        except ValueError:
            pass
        try:
            return float(value)
        except ValueError:
            return value

    def effective(self) -> dict:
        """Stored configuration with every known section merged over its defaults."""
        stored = self.load()
        result = dict(stored)
        for name, defaults in _SECTIONS.items():
            section = stored.get(name, {})
            if section is not None and not isinstance(section, dict):
                raise ConfigInvalid(f"Section '{name}' must be a mapping")
            result[name] = _merge(defaults, section or {})
        return result

    def get_section(self, section: str = None) -> dict:
        """
        Get a section of config or entire config.

        Example: get_section("grids") or get_section() for full config
        """
        config = self.effective()
        if not section:
            return config

        value = config
        for key in section.split("."):
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return {}

        return value if isinstance(value, dict) else {section.split(".")[-1]: value}

    def list_keys(self, section: str = None) -> List[str]:
        """List the keys of a section (or the top level)."""
        return list(self.get_section(section).keys())

    def get_grid_config(self) -> dict:
        return self.get_section("grids")

    def get_tolerances(self) -> dict:
        return self.get_section("tolerances")

    def get_monte_carlo_config(self) -> dict:
        return self.get_section("monte_carlo")

    def get_suite_config(self) -> dict:
        """Suite settings; the QCARLESON_WORKERS variable overrides the worker count."""
        suite = self.get_section("suite")
        env_workers = os.environ.get(WORKERS_ENV)
        if env_workers:
            try:
                suite["workers"] = int(env_workers)
            except ValueError as e:
                raise ConfigInvalid(f"{WORKERS_ENV} must be an integer, got '{env_workers}'") from e
        if int(suite.get("workers", 1)) < 1:
            raise ConfigInvalid("suite.workers must be at least 1")
        return suite

    def get_logging_config(self) -> dict:
        """Get logging settings with defaults."""
        return self.get_section("logging")

    def get_log_level(self) -> str:
        return str(self.get_logging_config().get("level", DEFAULT_LOG_LEVEL)).upper()

    def set_log_level(self, level: str):
        """Set the log level."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if level.upper() not in valid_levels:
            raise ValueError(f"Invalid log level: {level}. Must be one of {valid_levels}")
        self.set_value("logging.level", level.upper())
