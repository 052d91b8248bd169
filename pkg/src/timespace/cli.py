"""Command-line entry point: ``timespace {dispersion,adder,cache,efficiency}``.

Data goes to stdout (or ``--out``), diagnostics to stderr. Exit codes: 0 on
success, 1 for input errors, 2 for configuration errors.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

from . import cache as cache_mod
from . import efficiency as eff_mod
from .config import CONFIG_ENV_VAR, AnalysisConfig, load_config
from .core import TimeSpacePoint
from .dispersion import bundled_dataset_text, ingest_records, series_to_csv, series_to_json, trend_series
from .errors import ConfigError, InputError
from .gates import build_one_bit_adder, critical_path_latency, default_adder_placement, idle_report, simulate
from .netlist_io import parse_netlist, timeline_to_csv, timeline_to_dict

EXIT_OK, EXIT_INPUT, EXIT_CONFIG = 0, 1, 2


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("configuration")
    g.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV_VAR})")
    g.add_argument("--velocity-factor", type=float, help="signal speed as a fraction of c")
    g.add_argument("--on-chip-velocity-factor", type=float, help="extra factor for on-die wiring")
    g.add_argument("--max-distance-mode", choices=("diagonal", "edge"))
    g.add_argument("--default-bus-length", type=float, help="bus length in m for chips without data")
    g.add_argument("--thresholds", type=float, nargs=2, metavar=("SOUND", "VITIATED"))
    g.add_argument("--format", dest="output_format", choices=("csv", "json"))
    p.add_argument("--out", help="write the table here instead of stdout")
    p.add_argument("--svg", help="also render a diagram to this SVG file")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="timespace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dispersion", parents=[common], help="temporal merits of processor records")
    p.add_argument("dataset", nargs="?", help="processor CSV (default: bundled sample)")

    p = sub.add_parser("adder", parents=[common], help="simulate a placed one-bit adder or a netlist file")
    p.add_argument("--netlist", help="netlist text file (default: built-in adder)")
    p.add_argument("--xor2", choices=("left", "right"), default="left", help="sum gate at (-1,0) or (+1,0)")
    p.add_argument("--tau", type=float, default=1.0, help="gate processing time for the built-in adder")
    p.add_argument("--inputs", default=None, help="comma-separated name=bit list (default a=1,b=1,cin=0)")

    p = sub.add_parser("cache", parents=[common], help="apparent cache access times")
    p.add_argument("--scenario", help="scenario JSON file (default: cores at x=+-0.5, cache at (0, 0.5))")
    p.add_argument("--cache-position", type=float, nargs=2, metavar=("X", "Y"))
    p.add_argument("--speedup-factor", type=float, default=10.0, help="physical cache speedup to evaluate")

    p = sub.add_parser("efficiency", parents=[common], help="parallel efficiency surface")
    p.add_argument("--cores", type=float, nargs="+", help="core counts (default: 1, 10, ..., 1e7)")
    p.add_argument("--alpha", nargs="+", help="parallel fractions or preset names "
                   f"({', '.join(eff_mod.PRESETS)}); default: presets and 0.999")
    return parser


def _config(args) -> AnalysisConfig:
    base = load_config(args.config)
    thresholds = tuple(args.thresholds) if args.thresholds else None
    return base.updated(
        velocity_factor=args.velocity_factor,
        on_chip_velocity_factor=args.on_chip_velocity_factor,
        max_distance_mode=args.max_distance_mode,
        default_bus_length=args.default_bus_length,
        regime_thresholds=thresholds,
        output_format=args.output_format,
        svg_enabled=bool(args.svg) or None,
    )


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def run_dispersion(args, config: AnalysisConfig) -> str:
    text = _read(args.dataset) if args.dataset else bundled_dataset_text()
    diagnostics: list[str] = []
    records = ingest_records(io.StringIO(text), diagnostics)
    for msg in diagnostics:
        print(f"timespace: rejected {msg}", file=sys.stderr)
    if not records:
        raise InputError("no valid processor records")
    rows = trend_series(records, config.medium, config)
    if config.svg_enabled:
        from .figures import dispersion_figure
        dispersion_figure(rows, args.svg)
    return series_to_json(rows, config) if config.output_format == "json" else series_to_csv(rows, config)


def _parse_inputs(text: str) -> dict[str, int]:
    values = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, sep, bit = item.partition("=")
        if not sep or bit.strip() not in ("0", "1"):
            raise InputError(f"bad input assignment {item!r}; expected name=0 or name=1")
        values[name.strip()] = int(bit)
    return values


def run_adder(args, config: AnalysisConfig) -> str:
    if args.netlist:
        netlist = parse_netlist(_read(args.netlist))
        source = args.netlist
        if args.inputs is None:
            raise InputError("--inputs is required with --netlist")
    else:
        netlist = build_one_bit_adder(default_adder_placement(args.xor2), args.tau)
        source = f"builtin-adder xor2={args.xor2} tau={args.tau:g}"
    values = _parse_inputs(args.inputs if args.inputs is not None else "a=1,b=1,cin=0")
    timeline = simulate(netlist, values)
    if config.svg_enabled:
        from .figures import adder_diagram
        adder_diagram(timeline, args.svg, title=source)

    latencies = {o.name: critical_path_latency(timeline, o.name) for o in timeline.outputs}
    if config.output_format == "json":
        doc = {"analysis": "adder", "netlist": source, "config": config.as_dict(),
               "timeline": timeline_to_dict(timeline), "latency": latencies, "idle": idle_report(timeline)}
        return json.dumps(doc, indent=2) + "\n"
    head = [f"# timespace adder {config.header()}", f"# netlist: {source}"]
    head += [f"# latency {name}={lat:.9e}" for name, lat in latencies.items()]
    return "\n".join(head) + "\n" + timeline_to_csv(timeline)


def run_cache(args, config: AnalysisConfig) -> str:
    scenario = cache_mod.load_scenario(_read(args.scenario)) if args.scenario else cache_mod.default_scenario()
    if args.cache_position:
        scenario = scenario.with_cache_at(TimeSpacePoint(*args.cache_position))
    speedups = cache_mod.apparent_speedup(scenario, args.speedup_factor)
    fast = scenario.with_op_time(scenario.physical_op_time / args.speedup_factor)
    worst = cache_mod.worst_core_time(scenario) / cache_mod.worst_core_time(fast)
    if config.svg_enabled:
        from .figures import cache_diagram
        cache_diagram(scenario, args.svg, fast_op_time=fast.physical_op_time)

    if config.output_format == "json":
        doc = {"analysis": "cache", "config": config.as_dict(), "scenario": json.loads(cache_mod.scenario_to_json(scenario)),
               "speedup_factor": args.speedup_factor, "rows": cache_mod.access_rows(scenario),
               "fast_rows": cache_mod.access_rows(fast), "apparent_speedup": list(speedups),
               "worst_core_speedup": worst}
        return json.dumps(doc, indent=2) + "\n"
    head = [
        f"# timespace cache {config.header()}",
        f"# scenario: {cache_mod.scenario_to_json(scenario)}",
        f"# physical speedup factor={args.speedup_factor:g} apparent speedup per core: "
        + " ".join(f"{s:.9e}" for s in speedups) + f" worst-core={worst:.9e}",
    ]
    return "\n".join(head) + "\n" + cache_mod.access_table_csv(scenario)


def run_efficiency(args, config: AnalysisConfig) -> str:
    cores = args.cores or eff_mod.default_core_counts()
    alphas = [eff_mod.resolve_alpha(a) for a in (args.alpha or [*eff_mod.PRESETS, "0.999"])]
    points = eff_mod.efficiency_surface(cores, alphas)
    if config.svg_enabled:
        from .figures import efficiency_figure
        efficiency_figure(points, args.svg)
    if config.output_format == "json":
        return eff_mod.surface_to_json(points, config.as_dict())
    return eff_mod.surface_to_csv(points, config.header())


COMMANDS = {"dispersion": run_dispersion, "adder": run_adder, "cache": run_cache, "efficiency": run_efficiency}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _config(args)
    except ConfigError as exc:
        print(f"timespace: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        text = COMMANDS[args.command](args, config)
    except ConfigError as exc:
        print(f"timespace: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InputError as exc:
        print(f"timespace: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"timespace: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
