"""Transfer-time-aware performance analysis.

Components are placed in space; signals between them travel at a finite
speed. The modules here measure what that does to processor timing merits,
gate-level adder timing, cache access latency and parallel efficiency.
"""

from .core import (
    SPEED_OF_LIGHT, PropagationMedium, Regime, RegimeThresholds, TimeSpacePoint,
    classify_regime, from_meters, regime_ratio, transfer_time,
)
from .errors import ConfigError, InputError

__all__ = [
    "SPEED_OF_LIGHT", "PropagationMedium", "Regime", "RegimeThresholds", "TimeSpacePoint",
    "classify_regime", "from_meters", "regime_ratio", "transfer_time", "ConfigError", "InputError",
]
