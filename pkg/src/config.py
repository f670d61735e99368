"""Configuration loader for Slowgrowth."""

import copy
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from .construction.models import DEFAULT_MAX_CENTER_BITS, DEFAULT_R0, ConstructionConfig
from .exact.gaussian import GaussianRational, to_rational
from .growth.envelope import build_envelope
from .schedule.enumeration import TargetFamily
from .schedule.epsilon import EpsilonRule
from .schedule.variants import CANTOR, STANDARD_1VAR, STANDARD_NVAR, VARIANT_KINDS, ScheduleVariant

logger = logging.getLogger(__name__)

DEFAULTS: Dict[str, Any] = {
    "construction": {
        "n": 1,
        "m": 1,
        "steps": 4,
        "r0": DEFAULT_R0,
        "variant": STANDARD_1VAR,
        "epsilon": {"kind": "geometric", "ratio": "1/2", "scale": "1"},
        "envelope": {"kind": "inverse_factorial"},
        "cantor": {"root_half_width": "1/4"},
        "max_center_bits": DEFAULT_MAX_CENTER_BITS,
    },
    "quadrature": {"nodes": 256},
    "logging": {"level": "INFO", "log_file": None},
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    out = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def _lookup(data: Dict[str, Any], key: str, default: Any = None) -> Any:
    value: Any = data
    for k in key.split("."):
        if isinstance(value, dict) and k in value:
            value = value[k]
        else:
            return default
    return value


class ConstructionSettings:
    """Validated `construction:` section."""

    def __init__(self, data: Dict[str, Any]):
        """
        Initialize construction settings.

        Args:
            data: The merged construction section
        """
        self._data = data
        self._validate()

    def _validate(self) -> None:
        """Validate field types and ranges."""
        for field in ("n", "m", "steps", "r0", "variant", "epsilon", "envelope"):
            if self._data.get(field) is None:
                raise ValueError(f"Missing 'construction.{field}' in configuration")

        for field in ("n", "m"):
            value = self._data[field]
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError(f"'construction.{field}' must be a positive integer")
        steps = self._data["steps"]
        if not isinstance(steps, int) or isinstance(steps, bool) or steps < 0:
            raise ValueError("'construction.steps' must be a nonnegative integer")

        variant = self._data["variant"]
        if variant not in VARIANT_KINDS:
            raise ValueError(f"'construction.variant' must be one of {', '.join(VARIANT_KINDS)}")
        if variant == CANTOR and self._data["n"] != 1:
            raise ValueError("The cantor variant needs 'construction.n' = 1")
        if variant == STANDARD_1VAR and self._data["n"] != 1:
            raise ValueError(f"Use '{STANDARD_NVAR}' for 'construction.n' > 1")

        directions = self._data.get("directions")
        if directions is not None and not isinstance(directions, list):
            raise ValueError("'construction.directions' must be a list of vectors")
        targets = self._data.get("targets")
        if targets is not None and not isinstance(targets, list):
            raise ValueError("'construction.targets' must be a list")
        if not isinstance(self._data["envelope"], dict) or not isinstance(self._data["epsilon"], dict):
            raise ValueError("'construction.envelope' and 'construction.epsilon' must be mappings")

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a construction value using dot notation.

        Args:
            key: Key inside the construction section (e.g. 'cantor.root_half_width')
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        return _lookup(self._data, key, default)

    @property
    def steps(self) -> int:
        return self._data["steps"]

    @steps.setter
    def steps(self, value: int) -> None:
        if value < 0:
            raise ValueError("'construction.steps' must be a nonnegative integer")
        self._data["steps"] = value

    @property
    def variant(self) -> str:
        return self._data["variant"]

    def _directions(self) -> List[tuple]:
        raw = self._data.get("directions") or []
        return [tuple(GaussianRational.from_json(x) for x in vector) for vector in raw]

    def build(self) -> ConstructionConfig:
        """
        Build the run configuration.

        Raises:
            ValueError: On malformed rationals, envelopes, targets or directions
            NonUnitDirection: If a direction is not an exact unit vector
        """
        n, m = self._data["n"], self._data["m"]
        directions = self._directions()
        try:
            return ConstructionConfig(
                n=n,
                m=m,
                steps=self.steps,
                r0=to_rational(str(self._data["r0"])),
                envelope=build_envelope(self._data["envelope"]),
                epsilon=EpsilonRule.from_dict(self._data["epsilon"]),
                directions=directions,
                variant=ScheduleVariant(self.variant, max(len(directions), 1)),
                targets=TargetFamily.from_json(self._data.get("targets"), n, m),
                root_half_width=to_rational(str(self.get("cantor.root_half_width", "1/4"))),
                max_center_bits=int(self._data.get("max_center_bits", DEFAULT_MAX_CENTER_BITS)),
            )
        except (KeyError, TypeError) as e:
            raise ValueError(f"Invalid construction configuration: {e}") from e


class Config:
    """Configuration manager for Slowgrowth runs."""

    def __init__(self, config_path: str | Path | None = None):
        """
        Initialize configuration.

        Args:
            config_path: Path to a YAML file. If None, built-in defaults are used.

        Raises:
            FileNotFoundError: If the given file does not exist
            ValueError: If the configuration is invalid
        """
        loaded: Dict[str, Any] = {}
        if config_path is not None:
            config_path = Path(config_path)
            if not config_path.exists():
                raise FileNotFoundError(
                    f"Configuration file not found: {config_path}\n"
                    f"Please create one based on config.yaml.example"
                )
            with open(config_path, "r", encoding="utf-8") as f:
                loaded = yaml.safe_load(f) or {}
            if not isinstance(loaded, dict):
                raise ValueError("Configuration file must contain a mapping")
            logger.info(f"Loaded configuration from {config_path}")

        self._config = _merge(DEFAULTS, loaded)
        self._validate()
        self._construction = ConstructionSettings(self._config["construction"])

    def _validate(self) -> None:
        """Validate that all required configuration sections are present."""
        for section in ("construction", "quadrature", "logging"):
            if not isinstance(self._config.get(section), dict):
                raise ValueError(f"Missing '{section}' section in configuration")
        nodes = self._config["quadrature"].get("nodes")
        if not isinstance(nodes, int) or isinstance(nodes, bool) or nodes < 8:
            raise ValueError("'quadrature.nodes' must be an integer of at least 8")
        level = self._config["logging"].get("level", "INFO")
        if not isinstance(level, str) or level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Invalid 'logging.level': {level!r}")

    @property
    def construction(self) -> ConstructionSettings:
        """Get construction settings."""
        return self._construction

    @property
    def quadrature(self) -> Dict[str, Any]:
        """Get quadrature configuration."""
        return self._config["quadrature"]

    @property
    def logging(self) -> Dict[str, Any]:
        """Get logging configuration."""
        return self._config["logging"]

    def override(self, steps: Optional[int] = None, nodes: Optional[int] = None) -> None:
        """Apply command-line overrides for the step count and the quadrature size."""
        if steps is not None:
            self._construction.steps = steps
        if nodes is not None:
            if nodes < 8:
                raise ValueError("'quadrature.nodes' must be an integer of at least 8")
            self._config["quadrature"]["nodes"] = nodes

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value by key.

        Args:
            key: Configuration key (supports dot notation, e.g., 'construction.steps')
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        return _lookup(self._config, key, default)
