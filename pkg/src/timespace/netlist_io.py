"""Line-oriented netlist text format and timeline export.

Format (``#`` starts a comment)::

    input  <name> <x> <y> [t=<inject_time>]
    gate   <id> <AND|OR|XOR|NOT|BUF> <x> <y> tau=<seconds>
    wire   <src> -> <gate_id>.<pin0|pin1>
    output <name> <gate_id> <x> <y>
"""

from __future__ import annotations

import csv
import io
import re

from .core import TimeSpacePoint
from .errors import InputError
from .gates import GateKind, GateSpec, Netlist, OutputTap, PrimaryInput, Timeline, Wire

_PIN = re.compile(r"^(?P<gate>[^.\s]+)\.pin(?P<pin>\d+)$")


def _num(tok: str, lineno: int) -> float:
    try:
        return float(tok)
    except ValueError:
        raise InputError(f"line {lineno}: malformed number {tok!r}") from None


def _keyword(tok: str, key: str, lineno: int) -> float:
    if not tok.startswith(key + "="):
        raise InputError(f"line {lineno}: expected {key}=<value>, got {tok!r}")
    return _num(tok[len(key) + 1:], lineno)


def parse_netlist(text: str) -> Netlist:
    gates, inputs, wires, outputs = [], [], [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        head, args = toks[0], toks[1:]
        if head == "input" and len(args) in (3, 4):
            t = _keyword(args[3], "t", lineno) if len(args) == 4 else 0.0
            pos = TimeSpacePoint(_num(args[1], lineno), _num(args[2], lineno))
            inputs.append(PrimaryInput(args[0], pos, t))
        elif head == "gate" and len(args) == 5:
            try:
                kind = GateKind(args[1].upper())
            except ValueError:
                raise InputError(f"line {lineno}: unknown gate kind {args[1]!r}") from None
            pos = TimeSpacePoint(_num(args[2], lineno), _num(args[3], lineno))
            gates.append(GateSpec(args[0], kind, pos, _keyword(args[4], "tau", lineno)))
        elif head == "wire" and len(args) == 3 and args[1] == "->":
            m = _PIN.match(args[2])
            if not m:
                raise InputError(f"line {lineno}: wire sink must be <gate>.pin<N>, got {args[2]!r}")
            wires.append(Wire(args[0], m["gate"], int(m["pin"])))
        elif head == "output" and len(args) == 4:
            pos = TimeSpacePoint(_num(args[2], lineno), _num(args[3], lineno))
            outputs.append(OutputTap(args[0], args[1], pos))
        else:
            raise InputError(f"line {lineno}: cannot parse {raw.strip()!r}")
    return Netlist(tuple(gates), tuple(inputs), tuple(wires), tuple(outputs))


def format_netlist(netlist: Netlist) -> str:
    lines = []
    for i in netlist.inputs:
        lines.append(f"input {i.name} {i.position.x!r} {i.position.y!r} t={i.inject_time!r}")
    for g in netlist.gates:
        lines.append(f"gate {g.id} {g.kind.value} {g.position.x!r} {g.position.y!r} tau={g.processing_time!r}")
    for w in netlist.wires:
        lines.append(f"wire {w.source} -> {w.sink}.pin{w.pin}")
    for o in netlist.outputs:
        lines.append(f"output {o.name} {o.driver} {o.position.x!r} {o.position.y!r}")
    return "\n".join(lines) + "\n"


TIMELINE_COLUMNS = ("entity", "pin", "arrival", "start", "ready", "value", "idle")


def _fmt(v: float) -> str:
    return f"{v:.9e}"


def timeline_rows(timeline: Timeline) -> list[dict]:
    """One row per input injection, per gate pin, and per output tap."""
    rows = []
    for i in timeline.inputs:
        t = _fmt(i.inject_time)
        rows.append(dict(entity=f"input:{i.name}", pin="", arrival=t, start=t, ready=t, value=i.value, idle=_fmt(0.0)))
    for g in timeline.gates:
        for pin, (arr, idle) in enumerate(zip(g.arrivals, g.idle)):
            rows.append(dict(entity=g.id, pin=f"pin{pin}", arrival=_fmt(arr), start=_fmt(g.start),
                             ready=_fmt(g.ready), value=g.value, idle=_fmt(idle)))
    for o in timeline.outputs:
        t = _fmt(o.observed_time)
        rows.append(dict(entity=f"output:{o.name}", pin="", arrival=t, start=t, ready=t, value=o.value, idle=_fmt(0.0)))
    return rows


def timeline_to_csv(timeline: Timeline) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=TIMELINE_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(timeline_rows(timeline))
    return buf.getvalue()


def timeline_to_dict(timeline: Timeline) -> dict:
    return {
        "inputs": [{"name": i.name, "position": list(i.position), "inject_time": i.inject_time, "value": i.value}
                   for i in timeline.inputs],
        "gates": [{"id": g.id, "kind": g.kind.value, "position": list(g.position), "tau": g.processing_time,
                   "sources": list(g.sources), "arrivals": list(g.arrivals), "start": g.start, "ready": g.ready,
                   "value": g.value, "idle": list(g.idle)} for g in timeline.gates],
        "outputs": [{"name": o.name, "driver": o.driver, "position": list(o.position),
                     "observed_time": o.observed_time, "value": o.value} for o in timeline.outputs],
    }
