"""Parallel efficiency over core count and parallel fraction (Amdahl form).

``E(N, alpha) = 1 / (N * (1 - alpha) + alpha)``; the non-parallelizable part
can be derived from timing, treating transfer and synchronization overhead as
sequential work.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InputError

MODEL_NAME = "amdahl"

# Illustrative workload presets, not fitted to measured benchmark data.
PRESETS = {
    "hpl-like": 1.0 - 1e-7,
    "hpcg-like": 1.0 - 1e-5,
}


@dataclass(frozen=True)
class EfficiencyPoint:
    cores: float
    alpha: float
    efficiency: float


def _check(n: float, alpha: float) -> None:
    if not (n >= 1 and math.isfinite(n)):
        raise InputError(f"core count must be >= 1, got {n!r}")
    if not 0.0 <= alpha <= 1.0:
        raise InputError(f"parallel fraction must be in [0, 1], got {alpha!r}")


def efficiency(n: float, alpha: float) -> float:
    _check(n, alpha)
    return 1.0 / (n * (1.0 - alpha) + alpha)


def speedup(n: float, alpha: float) -> float:
    return n * efficiency(n, alpha)


def alpha_from_timing(processing: float, nonparallelizable_overhead: float) -> float:
    if not processing > 0:
        raise InputError(f"processing time must be > 0, got {processing!r}")
    if not nonparallelizable_overhead >= 0:
        raise InputError(f"overhead must be >= 0, got {nonparallelizable_overhead!r}")
    return processing / (processing + nonparallelizable_overhead)


def alpha_for_efficiency(n: float, target: float) -> float:
    """Parallel fraction at which ``n`` cores run at efficiency ``target``."""
    if not (n > 1 and math.isfinite(n)):
        raise InputError(f"core count must be > 1, got {n!r}")
    if not 1.0 / n <= target <= 1.0:
        raise InputError(f"target efficiency must be in [1/N, 1], got {target!r}")
    return (n - 1.0 / target) / (n - 1.0)


def resolve_alpha(value: str | float) -> float:
    if isinstance(value, str) and value in PRESETS:
        return PRESETS[value]
    try:
        return float(value)
    except ValueError:
        raise InputError(f"alpha must be a number or one of {sorted(PRESETS)}, got {value!r}") from None


def efficiency_surface(n_values: Sequence[float], alpha_values: Sequence[float]) -> list[EfficiencyPoint]:
    """Cross product in (alpha-major, N-minor) order."""
    if not len(n_values) or not len(alpha_values):
        raise InputError("both axes need at least one value")
    return [EfficiencyPoint(n, a, efficiency(n, a)) for a in alpha_values for n in n_values]


def default_core_counts() -> list[int]:
    return [10**k for k in range(0, 8)]


def surface_to_csv(points: Sequence[EfficiencyPoint], header: str = "") -> str:
    buf = io.StringIO()
    buf.write(f"# timespace efficiency model={MODEL_NAME} {header}".rstrip() + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("N", "alpha", "efficiency"))
    for p in points:
        w.writerow((f"{p.cores:.9e}", f"{p.alpha:.12e}", f"{p.efficiency:.9e}"))
    return buf.getvalue()


def surface_to_json(points: Sequence[EfficiencyPoint], config: dict | None = None) -> str:
    ns = sorted({p.cores for p in points})
    alphas = sorted({p.alpha for p in points})
    doc = {
        "analysis": "efficiency",
        "model": MODEL_NAME,
        "formula": "1 / (N * (1 - alpha) + alpha)",
        "config": config or {},
        "axes": {"N": {"values": ns, "scale": "log"}, "alpha": {"values": alphas, "scale": "linear"}},
        "points": [{"N": p.cores, "alpha": p.alpha, "efficiency": p.efficiency} for p in points],
    }
    return json.dumps(doc, indent=2) + "\n"
