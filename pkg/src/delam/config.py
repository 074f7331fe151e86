"""
Kernel Configuration Loader

Loads kernel settings from JSON profiles under settings/ and applies
environment overrides (DELAM_FUEL, DELAM_LOG_LEVEL).
"""

import json
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from .errors import ConfigError

FUEL_ENV = "DELAM_FUEL"
LOG_LEVEL_ENV = "DELAM_LOG_LEVEL"


@dataclass(frozen=True)
class KernelConfig:
    """Kernel configuration data structure"""

    profile: str = "default"
    description: str = ""
    fuel: int = 1_000_000
    law_cases: int = 1000
    law_seed: int = 0
    law_depth: int = 3
    log_level: str = "WARNING"

    def with_overrides(self, **overrides: Any) -> "KernelConfig":
        """Return a copy with the non-None overrides applied and validated"""
        values = {k: v for k, v in overrides.items() if v is not None}
        for name in ("fuel", "law_cases", "law_depth"):
            if name in values:
                values[name] = _positive_int(name, values[name])
        return replace(self, **values)


def _positive_int(name: str, value: Any) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ConfigError(f"Setting '{name}' must be an integer, got {value!r}")
    if number <= 0:
        raise ConfigError(f"Setting '{name}' must be positive, got {number}")
    return number


class ConfigLoader:
    """Loads and manages kernel configuration profiles"""

    def __init__(self, settings_dir: Optional[Path] = None):
        self.settings_dir = settings_dir or Path(__file__).parent / "settings"
        self._loaded_profiles: Dict[str, KernelConfig] = {}

    def get_available_profiles(self) -> List[str]:
        """Get list of available configuration profiles"""
        if not self.settings_dir.exists():
            return []
        return sorted(p.stem for p in self.settings_dir.glob("*.json"))

    def load_profile(self, profile: str) -> KernelConfig:
        """Load a profile from its JSON file"""
        if profile in self._loaded_profiles:
            return self._loaded_profiles[profile]

        config_file = self.settings_dir / f"{profile}.json"
        if not config_file.exists():
            available = self.get_available_profiles()
            raise ConfigError(f"Profile '{profile}' not found. Available: {available}")

        try:
            with open(config_file, 'r') as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"Invalid JSON in {config_file}: {e}")

        config = self._parse_config(data)
        self._loaded_profiles[profile] = config
        return config

    def _parse_config(self, data: Mapping[str, Any]) -> KernelConfig:
        """Parse JSON data into KernelConfig"""
        return KernelConfig(
            profile=data.get("profile", "default"),
            description=data.get("description", ""),
            fuel=_positive_int("fuel", data.get("fuel", 1_000_000)),
            law_cases=_positive_int("law_cases", data.get("law_cases", 1000)),
            law_seed=int(data.get("law_seed", 0)),
            law_depth=_positive_int("law_depth", data.get("law_depth", 3)),
            log_level=str(data.get("log_level", "WARNING")).upper(),
        )


def apply_environment(config: KernelConfig, environ: Optional[Mapping[str, str]] = None) -> KernelConfig:
    """Apply DELAM_FUEL and DELAM_LOG_LEVEL on top of a profile"""
    environ = os.environ if environ is None else environ
    overrides: Dict[str, Any] = {}
    if environ.get(FUEL_ENV):
        overrides["fuel"] = environ[FUEL_ENV]
    if environ.get(LOG_LEVEL_ENV):
        overrides["log_level"] = environ[LOG_LEVEL_ENV].upper()
    return config.with_overrides(**overrides)


# Global loader instance
_config_loader = ConfigLoader()


def load_config(profile: str = "default", environ: Optional[Mapping[str, str]] = None) -> KernelConfig:
    """Convenience function to load a profile with environment overrides"""
    return apply_environment(_config_loader.load_profile(profile), environ)


def get_available_profiles() -> List[str]:
    """Convenience function to list profiles"""
    return _config_loader.get_available_profiles()


def default_fuel() -> int:
    """Fuel budget used when a caller does not pass one explicitly"""
    return load_config().fuel
