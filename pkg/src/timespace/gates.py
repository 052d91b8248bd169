"""Placement-aware gate-level temporal simulation.

Each primary input changes exactly once, at its injection time. A gate starts
computing when the last of its input signals has physically arrived (driver
availability plus straight-line transfer time) and its output becomes defined
``processing_time`` later. Before that instant the output is undefined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from graphlib import CycleError, TopologicalSorter
from typing import Mapping

from .core import ORIGIN, TimeSpacePoint, transfer_time
from .errors import InputError


class GateKind(str, Enum):
    AND = "AND"
    OR = "OR"
    XOR = "XOR"
    NOT = "NOT"
    BUF = "BUF"

    @property
    def arity(self) -> int:
        return 1 if self in (GateKind.NOT, GateKind.BUF) else 2

    def evaluate(self, bits) -> int:
        if self is GateKind.AND:
            return bits[0] & bits[1]
        if self is GateKind.OR:
            return bits[0] | bits[1]
        if self is GateKind.XOR:
            return bits[0] ^ bits[1]
        if self is GateKind.NOT:
            return 1 - bits[0]
        return bits[0]


@dataclass(frozen=True)
class GateSpec:
    id: str
    kind: GateKind
    position: TimeSpacePoint = ORIGIN
    processing_time: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        if not math.isfinite(self.processing_time) or self.processing_time < 0:
            raise InputError(f"gate {self.id!r}: processing time must be finite and >= 0")


@dataclass(frozen=True)
class PrimaryInput:
    name: str
    position: TimeSpacePoint = ORIGIN
    inject_time: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.inject_time):
            raise InputError(f"input {self.name!r}: injection time must be finite")


@dataclass(frozen=True)
class Wire:
    source: str
    sink: str
    pin: int


@dataclass(frozen=True)
class OutputTap:
    name: str
    driver: str
    position: TimeSpacePoint = ORIGIN


@dataclass(frozen=True)
class Netlist:
    """An acyclic network of placed gates.

    Construction validates the structure: unique names, every gate pin driven
    by exactly one wire, pin indices within the gate's arity, no cycles.
    """

    gates: tuple[GateSpec, ...]
    inputs: tuple[PrimaryInput, ...]
    wires: tuple[Wire, ...]
    outputs: tuple[OutputTap, ...] = ()
    _order: tuple[str, ...] = field(init=False, repr=False, compare=False)
    _drivers: Mapping[str, tuple[str, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("gates", "inputs", "wires", "outputs"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

        names = [i.name for i in self.inputs] + [g.id for g in self.gates]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise InputError(f"duplicate input/gate names: {', '.join(dupes)}")
        tap_names = [o.name for o in self.outputs]
        if len(set(tap_names)) != len(tap_names):
            raise InputError("duplicate output names")

        gates = {g.id: g for g in self.gates}
        input_names = {i.name for i in self.inputs}
        pins: dict[str, list] = {g.id: [None] * g.kind.arity for g in self.gates}
        for w in self.wires:
            if w.source not in gates and w.source not in input_names:
                raise InputError(f"wire from unknown source {w.source!r}")
            if w.sink not in gates:
                raise InputError(f"wire into unknown gate {w.sink!r}")
            arity = gates[w.sink].kind.arity
            if not 0 <= w.pin < arity:
                raise InputError(f"arity mismatch: {gates[w.sink].kind.value} gate {w.sink!r} has no pin{w.pin}")
            if pins[w.sink][w.pin] is not None:
                raise InputError(f"pin {w.sink}.pin{w.pin} has more than one driver")
            pins[w.sink][w.pin] = w.source
        for gid, srcs in pins.items():
            missing = [i for i, s in enumerate(srcs) if s is None]
            if missing:
                raise InputError(f"gate {gid!r}: pin{missing[0]} is undriven")

        for o in self.outputs:
            if o.driver not in gates:
                raise InputError(f"output {o.name!r} taps unknown gate {o.driver!r}")

        sorter = TopologicalSorter({gid: [s for s in srcs if s in gates] for gid, srcs in pins.items()})
        try:
            order = tuple(sorter.static_order())
        except CycleError as exc:
            raise InputError(f"netlist is cyclic: {' -> '.join(exc.args[1])}") from None

        # Every pin is driven and the graph is acyclic, so each gate traces back to a
        # primary input unless there are no inputs at all.
        if self.gates and not self.inputs:
            raise InputError("netlist has gates but no primary inputs")

        object.__setattr__(self, "_order", order)
        object.__setattr__(self, "_drivers", {gid: tuple(srcs) for gid, srcs in pins.items()})

    @property
    def topological_order(self) -> tuple[str, ...]:
        return self._order

    def drivers(self, gate_id: str) -> tuple[str, ...]:
        """Source names feeding each pin of ``gate_id``, in pin order."""
        return self._drivers[gate_id]

    def gate(self, gate_id: str) -> GateSpec:
        for g in self.gates:
            if g.id == gate_id:
                return g
        raise KeyError(gate_id)

    def with_gate_moved(self, gate_id: str, position: TimeSpacePoint) -> "Netlist":
        self.gate(gate_id)
        gates = tuple(
            GateSpec(g.id, g.kind, position, g.processing_time) if g.id == gate_id else g for g in self.gates
        )
        return Netlist(gates, self.inputs, self.wires, self.outputs)


@dataclass(frozen=True)
class GateTiming:
    id: str
    kind: GateKind
    position: TimeSpacePoint
    processing_time: float
    sources: tuple[str, ...]
    arrivals: tuple[float, ...]
    start: float
    ready: float
    value: int

    @property
    def idle(self) -> tuple[float, ...]:
        """Per-pin waiting time between a signal's arrival and the gate's start."""
        return tuple(self.start - a for a in self.arrivals)

    def value_at(self, t: float) -> int | None:
        """Output at time ``t``; ``None`` while still undefined."""
        return self.value if t >= self.ready else None


@dataclass(frozen=True)
class TapTiming:
    name: str
    driver: str
    position: TimeSpacePoint
    observed_time: float
    value: int


@dataclass(frozen=True)
class InputEvent:
    name: str
    position: TimeSpacePoint
    inject_time: float
    value: int


@dataclass(frozen=True)
class Timeline:
    inputs: tuple[InputEvent, ...]
    gates: tuple[GateTiming, ...]
    outputs: tuple[TapTiming, ...]

    def gate(self, gate_id: str) -> GateTiming:
        for g in self.gates:
            if g.id == gate_id:
                return g
        raise InputError(f"unknown gate {gate_id!r}")

    def output(self, name: str) -> TapTiming:
        for o in self.outputs:
            if o.name == name:
                return o
        raise InputError(f"unknown output {name!r}")

    def value_at(self, gate_id: str, t: float) -> int | None:
        return self.gate(gate_id).value_at(t)


def _bit(name, value) -> int:
    if value in (0, 1) and not isinstance(value, float):
        return int(value)
    raise InputError(f"input {name!r} must be 0 or 1, got {value!r}")


def simulate(netlist: Netlist, input_values: Mapping[str, int]) -> Timeline:
    """Propagate one set of input transitions through ``netlist``."""
    declared = {i.name for i in netlist.inputs}
    unknown = sorted(set(input_values) - declared)
    if unknown:
        raise InputError(f"values given for undeclared inputs: {', '.join(unknown)}")
    missing = [i.name for i in netlist.inputs if i.name not in input_values]
    if missing:
        raise InputError(f"unassigned inputs: {', '.join(missing)}")

    # name -> (position, time the signal is available there, value)
    avail: dict[str, tuple[TimeSpacePoint, float, int]] = {}
    events = []
    for inp in netlist.inputs:
        v = _bit(inp.name, input_values[inp.name])
        avail[inp.name] = (inp.position, inp.inject_time, v)
        events.append(InputEvent(inp.name, inp.position, inp.inject_time, v))

    specs = {g.id: g for g in netlist.gates}
    timings = []
    for gid in netlist.topological_order:
        g = specs[gid]
        sources = netlist.drivers(gid)
        arrivals = tuple(avail[s][1] + transfer_time(avail[s][0], g.position) for s in sources)
        start = max(arrivals)
        ready = start + g.processing_time
        value = g.kind.evaluate([avail[s][2] for s in sources])
        avail[gid] = (g.position, ready, value)
        timings.append(GateTiming(gid, g.kind, g.position, g.processing_time, sources, arrivals, start, ready, value))

    taps = []
    for o in netlist.outputs:
        pos, ready, value = avail[o.driver]
        taps.append(TapTiming(o.name, o.driver, o.position, ready + transfer_time(pos, o.position), value))
    return Timeline(tuple(events), tuple(timings), tuple(taps))


ADDER_GATES = ("AND1", "XOR1", "AND2", "XOR2", "OR1")
ADDER_INPUTS = ("a", "b", "cin")
ADDER_OUTPUTS = ("sum", "cout")


def build_one_bit_adder(placement: Mapping[str, TimeSpacePoint], tau: float, inject_time: float = 0.0) -> Netlist:
    """Five-gate full adder.

    AND1 = a & b, XOR1 = a ^ b, AND2 = cin & XOR1, XOR2 (sum) = XOR1 ^ cin,
    OR1 (cout) = AND1 | AND2. ``placement`` must give a position for every gate,
    input and output name.
    """
    required = ADDER_GATES + ADDER_INPUTS + ADDER_OUTPUTS
    missing = [k for k in required if k not in placement]
    if missing:
        raise InputError(f"placement missing: {', '.join(missing)}")
    kinds = {"AND1": GateKind.AND, "XOR1": GateKind.XOR, "AND2": GateKind.AND, "XOR2": GateKind.XOR, "OR1": GateKind.OR}
    gates = tuple(GateSpec(g, kinds[g], placement[g], tau) for g in ADDER_GATES)
    inputs = tuple(PrimaryInput(n, placement[n], inject_time) for n in ADDER_INPUTS)
    wires = (
        Wire("a", "AND1", 0), Wire("b", "AND1", 1),
        Wire("a", "XOR1", 0), Wire("b", "XOR1", 1),
        Wire("cin", "AND2", 0), Wire("XOR1", "AND2", 1),
        Wire("XOR1", "XOR2", 0), Wire("cin", "XOR2", 1),
        Wire("AND1", "OR1", 0), Wire("AND2", "OR1", 1),
    )
    outputs = (OutputTap("sum", "XOR2", placement["sum"]), OutputTap("cout", "OR1", placement["cout"]))
    return Netlist(gates, inputs, wires, outputs)


def colocated_adder_placement() -> dict[str, TimeSpacePoint]:
    return {k: ORIGIN for k in ADDER_GATES + ADDER_INPUTS + ADDER_OUTPUTS}


def default_adder_placement(xor2_side: str = "left") -> dict[str, TimeSpacePoint]:
    """Demo layout on the x axis with the sum gate left (-1, 0) or right (+1, 0)."""
    if xor2_side not in ("left", "right"):
        raise InputError("xor2_side must be 'left' or 'right'")
    p = lambda x: TimeSpacePoint(float(x), 0.0)  # noqa: E731
    return {
        "a": p(-1.5), "b": p(-0.5), "cin": p(1.5),
        "AND1": p(-1), "XOR1": p(0), "AND2": p(1), "OR1": p(0),
        "XOR2": p(-1 if xor2_side == "left" else 1),
        "sum": p(1), "cout": p(0),
    }


def critical_path_latency(timeline: Timeline, output: str) -> float:
    """Observed time of ``output`` measured from the earliest input injection."""
    tap = timeline.output(output)
    t0 = min((i.inject_time for i in timeline.inputs), default=0.0)
    return tap.observed_time - t0


def idle_report(timeline: Timeline) -> dict[str, float]:
    return {g.id: sum(g.idle) for g in timeline.gates}
