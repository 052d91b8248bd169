"""Spatial separation expressed as signal transfer time.

Positions are kept in light-time units (seconds at the limiting speed), so the
Euclidean distance between two points *is* the transfer time between them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InputError

SPEED_OF_LIGHT = 299_792_458.0  # m/s


@dataclass(frozen=True)
class PropagationMedium:
    """Signal propagation speed along a path, in m/s."""

    speed: float = SPEED_OF_LIGHT

    def __post_init__(self):
        if not (0.0 < self.speed <= SPEED_OF_LIGHT) or math.isnan(self.speed):
            raise InputError(f"propagation speed must be in (0, {SPEED_OF_LIGHT:g}] m/s, got {self.speed!r}")

    @classmethod
    def with_velocity_factor(cls, factor: float) -> "PropagationMedium":
        if not (0.0 < factor <= 1.0):
            raise InputError(f"velocity factor must be in (0, 1], got {factor!r}")
        return cls(SPEED_OF_LIGHT * factor)

    def scaled(self, factor: float) -> "PropagationMedium":
        """Medium whose speed is this one's times ``factor`` (0 < factor <= 1)."""
        if not (0.0 < factor <= 1.0):
            raise InputError(f"velocity factor must be in (0, 1], got {factor!r}")
        return PropagationMedium(self.speed * factor)


@dataclass(frozen=True)
class TimeSpacePoint:
    x: float
    y: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InputError(f"coordinates must be finite, got ({self.x!r}, {self.y!r})")

    def __iter__(self):
        yield self.x
        yield self.y


ORIGIN = TimeSpacePoint(0.0, 0.0)


def from_meters(x_m: float, y_m: float, medium: PropagationMedium = PropagationMedium()) -> TimeSpacePoint:
    """Convert a position in meters to light-time at ``medium.speed``."""
    if not isinstance(medium, PropagationMedium):
        raise InputError("medium must be a PropagationMedium")
    return TimeSpacePoint(x_m / medium.speed, y_m / medium.speed)


def transfer_time(a: TimeSpacePoint, b: TimeSpacePoint) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


class Regime(str, Enum):
    SOUND = "sound"
    MARGINAL = "marginal"
    VITIATED = "vitiated"


@dataclass(frozen=True)
class RegimeThresholds:
    """Ratio bounds: at or below ``sound`` the transfer time is negligible,
    at or above ``vitiated`` neglecting it is unjustified."""

    sound: float = 1e-2
    vitiated: float = 1e-1

    def __post_init__(self):
        if not (0.0 <= self.sound < self.vitiated):
            raise InputError(f"thresholds must satisfy 0 <= sound < vitiated, got {self.sound}, {self.vitiated}")


def regime_ratio(transfer: float, processing: float) -> float:
    if processing <= 0 or math.isnan(processing):
        raise InputError(f"processing time must be positive, got {processing!r}")
    if transfer < 0 or math.isnan(transfer):
        raise InputError(f"transfer time must be non-negative, got {transfer!r}")
    return transfer / processing


def classify_regime(ratio: float, thresholds: RegimeThresholds = RegimeThresholds()) -> Regime:
    if ratio <= thresholds.sound:
        return Regime.SOUND
    if ratio >= thresholds.vitiated:
        return Regime.VITIATED
    return Regime.MARGINAL
