"""Apparent vs. physical access time of a cache placed among cores.

An access is a request travelling from the core to the cache, the cache's own
operation, and the response travelling back, so the apparent time is
``2 * transfer + op_time``. Only the last term improves with a faster cache.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, replace
from typing import Sequence

from .core import TimeSpacePoint, transfer_time
from .errors import InputError


@dataclass(frozen=True)
class CacheScenario:
    cores: tuple[TimeSpacePoint, ...]
    cache: TimeSpacePoint
    physical_op_time: float

    def __post_init__(self):
        object.__setattr__(self, "cores", tuple(self.cores))
        if not self.cores:
            raise InputError("scenario needs at least one core")
        if not (math.isfinite(self.physical_op_time) and self.physical_op_time >= 0):
            raise InputError(f"physical op time must be >= 0, got {self.physical_op_time!r}")

    def with_cache_at(self, position: TimeSpacePoint) -> "CacheScenario":
        return replace(self, cache=position)

    def with_op_time(self, op_time: float) -> "CacheScenario":
        return replace(self, physical_op_time=op_time)


# Cores at x = -0.5 and 0.5; the cache sits on the y axis, near or far.
FIGURE_CORES = (TimeSpacePoint(-0.5, 0.0), TimeSpacePoint(0.5, 0.0))
NEAR_CACHE = TimeSpacePoint(0.0, 0.5)
FAR_CACHE = TimeSpacePoint(0.0, 1.0)
SLOW_OP, FAST_OP = 1.0, 0.1


def default_scenario(cache: TimeSpacePoint = NEAR_CACHE, op_time: float = SLOW_OP) -> CacheScenario:
    return CacheScenario(FIGURE_CORES, cache, op_time)


def apparent_access_time(core: TimeSpacePoint | int, scenario: CacheScenario) -> float:
    if isinstance(core, int):
        if not 0 <= core < len(scenario.cores):
            raise InputError(f"no core with index {core}")
        core = scenario.cores[core]
    elif core not in scenario.cores:
        raise InputError(f"core {tuple(core)} is not part of the scenario")
    return 2.0 * transfer_time(core, scenario.cache) + scenario.physical_op_time


def apparent_speedup(scenario: CacheScenario, physical_speedup_factor: float) -> tuple[float, ...]:
    """Per-core ratio of apparent times before and after speeding the cache up."""
    if not physical_speedup_factor > 0:
        raise InputError(f"speedup factor must be > 0, got {physical_speedup_factor!r}")
    fast = scenario.with_op_time(scenario.physical_op_time / physical_speedup_factor)
    ratios = []
    for c in scenario.cores:
        before, after = apparent_access_time(c, scenario), apparent_access_time(c, fast)
        # zero-time access (co-located, op 0): nothing to speed up
        ratios.append(before / after if after > 0 else 1.0)
    return tuple(ratios)


def worst_core_time(scenario: CacheScenario) -> float:
    return max(apparent_access_time(c, scenario) for c in scenario.cores)


def placement_sensitivity(scenario: CacheScenario,
                          candidate_positions: Sequence[TimeSpacePoint]) -> list[tuple[TimeSpacePoint, float]]:
    """Worst-core apparent time for each candidate cache position."""
    if not candidate_positions:
        raise InputError("no candidate positions")
    return [(p, worst_core_time(scenario.with_cache_at(p))) for p in candidate_positions]


def _point(value, what: str) -> TimeSpacePoint:
    try:
        x, y = value
        return TimeSpacePoint(float(x), float(y))
    except (TypeError, ValueError):
        raise InputError(f"{what} must be an [x, y] pair, got {value!r}") from None


def load_scenario(text: str) -> CacheScenario:
    """Parse ``{"cores": [[x, y], ...], "cache": [x, y], "op_time": t}``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"scenario is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("scenario must be a JSON object")
    missing = [k for k in ("cores", "cache", "op_time") if k not in doc]
    if missing:
        raise InputError(f"scenario missing keys: {', '.join(missing)}")
    if not isinstance(doc["cores"], list):
        raise InputError("cores must be a list of [x, y] pairs")
    cores = tuple(_point(c, "core") for c in doc["cores"])
    try:
        op = float(doc["op_time"])
    except (TypeError, ValueError):
        raise InputError(f"op_time must be a number, got {doc['op_time']!r}") from None
    return CacheScenario(cores, _point(doc["cache"], "cache"), op)


def scenario_to_json(scenario: CacheScenario) -> str:
    return json.dumps({"cores": [list(c) for c in scenario.cores], "cache": list(scenario.cache),
                       "op_time": scenario.physical_op_time})


ACCESS_COLUMNS = ("core_index", "transfer", "physical", "apparent")


def access_rows(scenario: CacheScenario) -> list[dict]:
    """``transfer`` is the round trip; ``apparent = transfer + physical``."""
    return [
        {"core_index": i, "transfer": 2.0 * transfer_time(c, scenario.cache),
         "physical": scenario.physical_op_time, "apparent": apparent_access_time(c, scenario)}
        for i, c in enumerate(scenario.cores)
    ]


def access_table_csv(scenario: CacheScenario) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ACCESS_COLUMNS)
    for r in access_rows(scenario):
        w.writerow([r["core_index"]] + [f"{r[k]:.9e}" for k in ACCESS_COLUMNS[1:]])
    return buf.getvalue()
