"""Temporal merits of processors: on-chip transfer times vs. processing time.

Distances are estimated from die (or room) area alone. The minimum is the
average element spacing ``sqrt(area / count)``, the maximum the distance
between the two farthest elements, the cache sits half a die edge away and
the bus length comes from the record or a configured default. Dividing each
distance by the propagation speed gives a transfer time; the dispersion is the
geometric mean of the min and max transfer times over the clock period.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, TextIO

from .config import AnalysisConfig
from .core import PropagationMedium, classify_regime
from .errors import InputError

log = logging.getLogger(__name__)

KINDS = ("chip", "room-scale")
INPUT_COLUMNS = ("name", "year", "element_count", "area_m2", "clock_hz", "bus_length_m", "kind")
OUTPUT_COLUMNS = (
    "name", "year", "proc_transfer_min_s", "proc_transfer_max_s", "cache_transfer_s", "bus_transfer_s",
    "processing_time_s", "relative_min", "relative_max", "relative_cache", "relative_bus", "dispersion",
)


@dataclass(frozen=True)
class ProcessorRecord:
    name: str
    year: int
    element_count: int
    area: float  # m^2
    clock: float  # Hz
    bus_length: float | None = None  # m
    kind: str = "chip"

    def __post_init__(self):
        if self.element_count < 1:
            raise InputError(f"{self.name}: element_count must be >= 1")
        if not (self.area > 0 and math.isfinite(self.area)):
            raise InputError(f"{self.name}: area must be > 0")
        if not (self.clock > 0 and math.isfinite(self.clock)):
            raise InputError(f"{self.name}: clock must be > 0")
        if self.bus_length is not None and not self.bus_length >= 0:
            raise InputError(f"{self.name}: bus_length must be >= 0")
        if self.kind not in KINDS:
            raise InputError(f"{self.name}: kind must be one of {KINDS}, got {self.kind!r}")


@dataclass(frozen=True)
class TemporalMetrics:
    proc_transfer_min: float
    proc_transfer_max: float
    cache_transfer: float
    bus_transfer: float
    processing_time: float
    dispersion: float
    bus_estimated: bool = False

    @property
    def relative_min(self) -> float:
        return self.proc_transfer_min / self.processing_time

    @property
    def relative_max(self) -> float:
        return self.proc_transfer_max / self.processing_time

    @property
    def relative_cache(self) -> float:
        return self.cache_transfer / self.processing_time

    @property
    def relative_bus(self) -> float:
        return self.bus_transfer / self.processing_time


def avg_element_distance(area: float, count: int) -> float:
    if not area > 0:
        raise InputError(f"area must be > 0, got {area!r}")
    if count < 1:
        raise InputError(f"element count must be >= 1, got {count!r}")
    return math.sqrt(area / count)


def max_element_distance(area: float, mode: str = "diagonal") -> float:
    """Farthest-element distance on a square die: its diagonal, or its edge."""
    if not area > 0:
        raise InputError(f"area must be > 0, got {area!r}")
    if mode == "diagonal":
        return math.sqrt(2.0 * area)
    if mode == "edge":
        return math.sqrt(area)
    raise InputError(f"unknown max-distance mode {mode!r}")


def dispersion(min_t: float, max_t: float, processing: float) -> float:
    if not 0 <= min_t <= max_t:
        raise InputError(f"need 0 <= min <= max transfer time, got {min_t!r}, {max_t!r}")
    if not processing > 0:
        raise InputError(f"processing time must be > 0, got {processing!r}")
    return math.sqrt(min_t * max_t) / processing


def record_speed(record: ProcessorRecord, medium: PropagationMedium, config: AnalysisConfig) -> float:
    """Effective on-die signal speed for ``record``."""
    if record.kind == "chip":
        return medium.speed * config.on_chip_velocity_factor
    return medium.speed


def compute_metrics(record: ProcessorRecord, medium: PropagationMedium | None = None,
                    config: AnalysisConfig | None = None) -> TemporalMetrics:
    config = config or AnalysisConfig()
    medium = medium or config.medium
    speed = record_speed(record, medium, config)
    t_min = avg_element_distance(record.area, record.element_count) / speed
    t_max = max_element_distance(record.area, config.max_distance_mode) / speed
    t_cache = math.sqrt(record.area) / 2.0 / speed

    # The bus runs off-die, so it is not slowed by the on-chip factor.
    estimated = False
    if record.bus_length is not None:
        t_bus = record.bus_length / medium.speed
    elif record.kind == "room-scale":
        t_bus = 0.0
    else:
        t_bus = config.default_bus_length / medium.speed
        estimated = True

    processing = 1.0 / record.clock
    return TemporalMetrics(t_min, t_max, t_cache, t_bus, processing, dispersion(t_min, t_max, processing), estimated)


def _parse_row(row: dict, lineno: int) -> ProcessorRecord:
    def num(col, cast=float):
        raw = (row.get(col) or "").strip()
        if not raw:
            raise InputError(f"row {lineno}: missing value for {col}")
        try:
            value = float(raw)
        except ValueError:
            raise InputError(f"row {lineno}: malformed number {raw!r} in {col}") from None
        if cast is int:
            if not value.is_integer():
                raise InputError(f"row {lineno}: {col} must be an integer, got {raw!r}")
            return int(value)
        return value

    name = (row.get("name") or "").strip()
    if not name:
        raise InputError(f"row {lineno}: missing value for name")
    bus_raw = (row.get("bus_length_m") or "").strip()
    try:
        return ProcessorRecord(
            name=name,
            year=num("year", int),
            element_count=num("element_count", int),
            area=num("area_m2"),
            clock=num("clock_hz"),
            bus_length=num("bus_length_m") if bus_raw else None,
            kind=(row.get("kind") or "").strip(),
        )
    except InputError as exc:
        msg = str(exc)
        raise InputError(msg if msg.startswith("row ") else f"row {lineno}: {msg}") from None


def ingest_records(source: TextIO | Iterable[str], diagnostics: list[str] | None = None) -> list[ProcessorRecord]:
    """Read processor records from CSV text.

    Lines starting with ``#`` are comments. Invalid rows are skipped; a message
    naming the file line is appended to ``diagnostics`` (or logged). A missing
    header or mandatory column raises :class:`InputError`.
    """
    numbered = [(n, line) for n, line in enumerate(source, 1) if not line.lstrip().startswith("#") and line.strip()]
    if not numbered:
        raise InputError("no header row")
    reader = csv.DictReader(line for _, line in numbered)
    missing = [c for c in INPUT_COLUMNS if c not in (reader.fieldnames or [])]
    if missing:
        raise InputError(f"header is missing columns: {', '.join(missing)}")

    records = []
    for (lineno, _), row in zip(numbered[1:], reader):
        try:
            records.append(_parse_row(row, lineno))
        except InputError as exc:
            if diagnostics is not None:
                diagnostics.append(str(exc))
            else:
                log.warning("%s", exc)
    return records


def bundled_dataset_text() -> str:
    return resources.files("timespace").joinpath("data/processors.csv").read_text(encoding="utf-8")


def load_bundled_records() -> list[ProcessorRecord]:
    return ingest_records(io.StringIO(bundled_dataset_text()))


@dataclass(frozen=True)
class TrendRow:
    record: ProcessorRecord
    metrics: TemporalMetrics


def trend_series(records: Iterable[ProcessorRecord], medium: PropagationMedium | None = None,
                 config: AnalysisConfig | None = None) -> list[TrendRow]:
    records = sorted(records, key=lambda r: (r.year, r.name))
    if not records:
        raise InputError("no records to analyse")
    return [TrendRow(r, compute_metrics(r, medium, config)) for r in records]


def _fmt(v: float) -> str:
    return f"{v:.9e}"


def _row_values(row: TrendRow) -> dict:
    m = row.metrics
    return {
        "name": row.record.name,
        "year": row.record.year,
        "proc_transfer_min_s": m.proc_transfer_min,
        "proc_transfer_max_s": m.proc_transfer_max,
        "cache_transfer_s": m.cache_transfer,
        "bus_transfer_s": m.bus_transfer,
        "processing_time_s": m.processing_time,
        "relative_min": m.relative_min,
        "relative_max": m.relative_max,
        "relative_cache": m.relative_cache,
        "relative_bus": m.relative_bus,
        "dispersion": m.dispersion,
    }


def series_to_csv(rows: list[TrendRow], config: AnalysisConfig) -> str:
    buf = io.StringIO()
    buf.write(f"# timespace dispersion {config.header()}\n")
    estimated = [r.record.name for r in rows if r.metrics.bus_estimated]
    if estimated:
        buf.write(f"# bus_transfer_s estimated from default_bus_length for: {'; '.join(estimated)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(OUTPUT_COLUMNS)
    for row in rows:
        values = _row_values(row)
        writer.writerow([v if k in ("name", "year") else _fmt(v) for k, v in values.items()])
    return buf.getvalue()


def series_to_json(rows: list[TrendRow], config: AnalysisConfig) -> str:
    out = []
    for row in rows:
        values = _row_values(row)
        for k, v in values.items():
            if k not in ("name", "year"):
                values[k] = float(_fmt(v))
        values["bus_estimated"] = row.metrics.bus_estimated
        values["regime"] = classify_regime(row.metrics.dispersion, config.thresholds).value
        out.append(values)
    doc = {"analysis": "dispersion", "config": config.as_dict(), "rows": out}
    return json.dumps(doc, indent=2) + "\n"

