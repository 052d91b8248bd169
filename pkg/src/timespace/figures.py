"""SVG time-space diagrams and trend plots.

Time runs down the vertical axis. Green marks a defined signal, orange a
component's physical operation, grey dotted lines a signal in transit.
"""

from __future__ import annotations

from contextlib import contextmanager
from pathlib import Path
from typing import Sequence

import matplotlib
from matplotlib.figure import Figure

from .cache import CacheScenario, apparent_access_time
from .core import transfer_time
from .dispersion import TrendRow
from .efficiency import EfficiencyPoint
from .gates import Timeline

GREEN = "#2ca02c"
ORANGE = "#ff7f0e"
GREY = "#7f7f7f"

_RC = {
    "svg.hashsalt": "timespace",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


@contextmanager
def _style():
    with matplotlib.rc_context(_RC):
        yield


def _save(fig: Figure, path) -> Path:
    path = Path(path)
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": "timespace"})
    return path


def _arrow(ax, x0, y0, x1, y1, color, **kw):
    ax.annotate("", xy=(x1, y1), xytext=(x0, y0),
                arrowprops=dict(arrowstyle="-|>", color=color, lw=kw.pop("lw", 1.4), shrinkA=0, shrinkB=0, **kw))


def adder_diagram(timeline: Timeline, path, title: str = "") -> Path:
    """Time-space diagram of one simulated transition through a netlist.

    Each gate gets an orange bar for its processing interval and a green arrow
    from its ready time onward. The gap between t=0 and the arrow base is time
    during which the gate output is undefined.
    """
    horizon = max([g.ready for g in timeline.gates] + [o.observed_time for o in timeline.outputs] + [0.0])
    horizon = horizon * 1.15 + 0.5
    pos = {i.name: (i.position.x, i.inject_time) for i in timeline.inputs}
    pos.update({g.id: (g.position.x, g.ready) for g in timeline.gates})

    with _style():
        fig = Figure(figsize=(7, 5))
        ax = fig.add_subplot()
        for i in timeline.inputs:
            _arrow(ax, i.position.x, i.inject_time, i.position.x, horizon, GREEN, ls="--", lw=0.8)
            ax.text(i.position.x, -0.05 * horizon, f"{i.name}={i.value}", ha="center", va="bottom")
        for g in timeline.gates:
            x = g.position.x
            for src, arr in zip(g.sources, g.arrivals):
                sx, st = pos[src]
                ax.plot([sx, x], [st, arr], ls=":", color=GREY, lw=0.8)
            ax.plot([x, x], [g.start, g.ready], color=ORANGE, lw=5, solid_capstyle="butt")
            _arrow(ax, x, g.ready, x, horizon, GREEN)
            ax.text(x + 0.04, g.ready, f"{g.id}={g.value}", va="bottom", fontsize=8)
        for o in timeline.outputs:
            ax.plot([pos[o.driver][0], o.position.x], [pos[o.driver][1], o.observed_time], ls=":", color=GREY, lw=0.8)
            ax.plot([o.position.x], [o.observed_time], marker="v", color="black")
            ax.text(o.position.x + 0.04, o.observed_time, f"{o.name}@{o.observed_time:.3g}", va="top", fontsize=8)
        ax.set_ylim(horizon, -0.1 * horizon)
        ax.set_xlabel("position (light-time)")
        ax.set_ylabel("time")
        if title:
            ax.set_title(title)
        return _save(fig, path)


def cache_diagram(scenario: CacheScenario, path, fast_op_time: float | None = None, title: str = "") -> Path:
    """Request/response paths between every core and the cache.

    Orange bars are the physical cache operation, green arrows the apparent
    access time seen by each core. With ``fast_op_time`` the faster cache is
    drawn in a second panel on the same time scale.
    """
    variants = [scenario] if fast_op_time is None else [scenario, scenario.with_op_time(fast_op_time)]
    horizon = max(apparent_access_time(c, scenario) for c in scenario.cores) * 1.1

    with _style():
        fig = Figure(figsize=(4.5 * len(variants), 4.5))
        axes = fig.subplots(1, len(variants), squeeze=False)[0]
        for ax, sc in zip(axes, variants):
            cx = sc.cache.x
            for k, core in enumerate(sc.cores):
                d = transfer_time(core, sc.cache)
                # Offset the cache bar per core so simultaneous accesses stay readable.
                bx = cx + (k - (len(sc.cores) - 1) / 2) * 0.04
                ax.plot([core.x, bx], [0, d], ls=":", color=GREY, lw=0.9)
                ax.plot([bx, bx], [d, d + sc.physical_op_time], color=ORANGE, lw=5, solid_capstyle="butt")
                ax.plot([bx, core.x], [d + sc.physical_op_time, 2 * d + sc.physical_op_time], ls=":", color=GREY, lw=0.9)
                total = apparent_access_time(core, sc)
                _arrow(ax, core.x, 0, core.x, total, GREEN)
                ax.text(core.x, total, f"{total:.3f}", ha="center", va="top")
            ax.set_ylim(horizon, -0.05 * horizon)
            ax.set_xlabel("x (light-time)")
            ax.set_ylabel("time")
            ax.set_title(f"cache at ({sc.cache.x:g}, {sc.cache.y:g}), op={sc.physical_op_time:g}")
        if title:
            fig.suptitle(title)
        fig.tight_layout()
        return _save(fig, path)


def dispersion_figure(rows: Sequence[TrendRow], path, title: str = "") -> Path:
    years = [r.record.year for r in rows]
    series = {
        "Proc transfer (min)": [r.metrics.relative_min for r in rows],
        "Proc transfer (max)": [r.metrics.relative_max for r in rows],
        "Cache transfer": [r.metrics.relative_cache for r in rows],
        "Bus transfer": [r.metrics.relative_bus for r in rows],
        "Proc dispersion": [r.metrics.dispersion for r in rows],
    }
    with _style():
        fig = Figure(figsize=(7, 4.5))
        ax = fig.add_subplot()
        for label, ys in series.items():
            pts = [(x, y) for x, y in zip(years, ys) if y > 0]
            if pts:
                ax.plot(*zip(*pts), marker="o", ms=3, label=label, lw=2.2 if label == "Proc dispersion" else 1.0)
        ax.set_yscale("log")
        ax.set_xlabel("year of production")
        ax.set_ylabel("transfer time / processing time")
        ax.legend(frameon=False, fontsize=8)
        if title:
            ax.set_title(title)
        fig.tight_layout()
        return _save(fig, path)


def efficiency_figure(points: Sequence[EfficiencyPoint], path, title: str = "") -> Path:
    by_alpha: dict[float, list[EfficiencyPoint]] = {}
    for p in points:
        by_alpha.setdefault(p.alpha, []).append(p)
    with _style():
        fig = Figure(figsize=(6.5, 4.5))
        ax = fig.add_subplot()
        for alpha in sorted(by_alpha, reverse=True):
            pts = sorted(by_alpha[alpha], key=lambda p: p.cores)
            ax.plot([p.cores for p in pts], [p.efficiency for p in pts], marker=".",
                    label=f"1-alpha = {1 - alpha:.1e}")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("number of cores N")
        ax.set_ylabel("efficiency")
        ax.legend(frameon=False, fontsize=8)
        if title:
            ax.set_title(title)
        fig.tight_layout()
        return _save(fig, path)
