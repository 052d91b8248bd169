"""Analysis configuration shared by every subcommand."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from .core import PropagationMedium, RegimeThresholds
from .errors import ConfigError, InputError

CONFIG_ENV_VAR = "TIMESPACE_CONFIG"


@dataclass(frozen=True)
class AnalysisConfig:
    # Multiplies c for every path.
    velocity_factor: float = 1.0
    # Extra factor for on-chip (kind=chip) wiring, applied on top of velocity_factor.
    # RC-limited on-die signalling is far slower than c; 1e-4 puts the Intel 8008's
    # relative transfer times on the same footing as EDVAC's room-scale wiring.
    on_chip_velocity_factor: float = 1e-4
    max_distance_mode: str = "diagonal"
    default_bus_length: float = 0.1  # m, chip records without bus data
    regime_thresholds: tuple[float, float] = (1e-2, 1e-1)
    output_format: str = "csv"
    svg_enabled: bool = False

    def __post_init__(self):
        for name in ("velocity_factor", "on_chip_velocity_factor"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not (0.0 < v <= 1.0):
                raise ConfigError(f"{name} must be in (0, 1], got {v!r}")
        if self.max_distance_mode not in ("diagonal", "edge"):
            raise ConfigError(f"max_distance_mode must be 'diagonal' or 'edge', got {self.max_distance_mode!r}")
        if not isinstance(self.default_bus_length, (int, float)) or self.default_bus_length < 0:
            raise ConfigError("default_bus_length must be >= 0")
        try:
            sound, vitiated = (float(x) for x in self.regime_thresholds)
        except (TypeError, ValueError):
            raise ConfigError("regime_thresholds must be a pair of numbers") from None
        if not 0.0 <= sound < vitiated:
            raise ConfigError(f"regime thresholds must satisfy 0 <= sound < vitiated, got {sound}, {vitiated}")
        object.__setattr__(self, "regime_thresholds", (sound, vitiated))
        if self.output_format not in ("csv", "json"):
            raise ConfigError(f"output_format must be 'csv' or 'json', got {self.output_format!r}")

    @property
    def medium(self) -> PropagationMedium:
        return PropagationMedium.with_velocity_factor(self.velocity_factor)

    @property
    def thresholds(self) -> RegimeThresholds:
        try:
            return RegimeThresholds(*self.regime_thresholds)
        except InputError as exc:
            raise ConfigError(str(exc)) from None

    def updated(self, **changes) -> "AnalysisConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("svg_enabled")
        d.pop("output_format")
        d["regime_thresholds"] = list(self.regime_thresholds)
        return d

    def header(self) -> str:
        """``key=value`` summary embedded in every output file."""
        d = self.as_dict()
        d["regime_thresholds"] = "{:g},{:g}".format(*self.regime_thresholds)
        return " ".join(f"{k}={v}" for k, v in d.items())


def load_config(path: str | os.PathLike | None = None) -> AnalysisConfig:
    """Load a JSON config file; with no path, fall back to ``$TIMESPACE_CONFIG`` or defaults."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR) or None
    if path is None:
        return AnalysisConfig()
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    known = {f.name for f in fields(AnalysisConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    if "regime_thresholds" in data:
        data["regime_thresholds"] = tuple(data["regime_thresholds"])
    return AnalysisConfig(**data)
