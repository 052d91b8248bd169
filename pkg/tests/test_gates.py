import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from timespace.core import ORIGIN, TimeSpacePoint
from timespace.errors import InputError
from timespace.gates import (
    ADDER_GATES, GateKind, GateSpec, Netlist, OutputTap, PrimaryInput, Wire, build_one_bit_adder,
    colocated_adder_placement, critical_path_latency, default_adder_placement, idle_report, simulate,
)
from timespace.netlist_io import (
    TIMELINE_COLUMNS, format_netlist, parse_netlist, timeline_to_csv, timeline_to_dict,
)

from oracles import level_depth, random_netlist, relax_timing

BITS = list(itertools.product((0, 1), repeat=3))


def adder_values(a, b, cin):
    return {"a": a, "b": b, "cin": cin}


def random_placement(rng, spread=2.0):
    return {k: TimeSpacePoint(rng.uniform(-spread, spread), rng.uniform(-spread, spread))
            for k in colocated_adder_placement()}


def test_colocated_adder_levels():
    tl = simulate(build_one_bit_adder(colocated_adder_placement(), 1.0), adder_values(1, 1, 0))
    expected = {"AND1": (1, 1), "XOR1": (1, 0), "AND2": (2, 0), "XOR2": (2, 0), "OR1": (3, 1)}
    for gid, (ready, value) in expected.items():
        g = tl.gate(gid)
        assert (g.ready, g.value) == (ready, value), gid
    assert tl.output("sum").observed_time == 2
    assert tl.output("cout").observed_time == 3


def test_zero_tau_colocated_is_pure_boolean():
    nl = build_one_bit_adder(colocated_adder_placement(), 0.0, inject_time=0.25)
    tl = simulate(nl, adder_values(1, 0, 1))
    assert all(g.ready == 0.25 for g in tl.gates)
    assert critical_path_latency(tl, "cout") == 0


def test_adder_structure():
    nl = build_one_bit_adder(colocated_adder_placement(), 1.0)
    assert len(nl.gates) == 5 and len(nl.inputs) == 3 and len(nl.outputs) == 2
    assert set(nl.topological_order) == set(ADDER_GATES)
    assert nl.topological_order.index("XOR1") < nl.topological_order.index("XOR2")


def test_adder_missing_placement():
    placement = colocated_adder_placement()
    del placement["OR1"]
    with pytest.raises(InputError, match="OR1"):
        build_one_bit_adder(placement, 1.0)


@pytest.mark.parametrize("seed", range(5))
def test_adder_logic_independent_of_placement(seed):
    rng = random.Random(seed)
    nl = build_one_bit_adder(random_placement(rng), rng.uniform(0, 2))
    for a, b, cin in BITS:
        tl = simulate(nl, adder_values(a, b, cin))
        total = a + b + cin
        assert (tl.output("sum").value, tl.output("cout").value) == (total & 1, total >> 1)


def test_xor2_position_changes_sum_time():
    left = simulate(build_one_bit_adder(default_adder_placement("left"), 1.0), adder_values(1, 1, 0))
    right = simulate(build_one_bit_adder(default_adder_placement("right"), 1.0), adder_values(1, 1, 0))
    # relaxation oracle values for the demo layout
    assert left.output("sum").observed_time == pytest.approx(6.5)
    assert right.output("sum").observed_time == pytest.approx(4.5)
    assert left.output("cout").observed_time == right.output("cout").observed_time == pytest.approx(6.5)


def test_idle_report_colocated():
    tl = simulate(build_one_bit_adder(colocated_adder_placement(), 1.0), adder_values(1, 1, 0))
    idle = idle_report(tl)
    assert idle["AND1"] == idle["XOR1"] == 0
    assert tl.gate("XOR2").idle == (0.0, 1.0)  # cin waits for aXORb
    assert idle["XOR2"] == 1.0


def test_value_undefined_before_ready():
    tl = simulate(build_one_bit_adder(colocated_adder_placement(), 1.0), adder_values(1, 1, 0))
    assert tl.value_at("OR1", 2.999) is None
    assert tl.value_at("OR1", 3.0) == 1


def test_critical_path_unknown_output():
    tl = simulate(build_one_bit_adder(colocated_adder_placement(), 1.0), adder_values(0, 0, 0))
    with pytest.raises(InputError):
        critical_path_latency(tl, "nope")


def test_spreading_a_gate_never_shortens_latency(rng):
    base = colocated_adder_placement()
    ref = simulate(build_one_bit_adder(base, 1.0), adder_values(1, 0, 1))
    grid = [TimeSpacePoint(x, y) for x in (-1, -0.3, 0.5, 2) for y in (-1, 0, 0.7)]
    for gid in ADDER_GATES:
        for p in grid:
            placement = dict(base, **{gid: p})
            tl = simulate(build_one_bit_adder(placement, 1.0), adder_values(1, 0, 1))
            for out in ("sum", "cout"):
                assert critical_path_latency(tl, out) >= critical_path_latency(ref, out)


def test_simulate_errors():
    nl = build_one_bit_adder(colocated_adder_placement(), 1.0)
    with pytest.raises(InputError, match="unassigned"):
        simulate(nl, {"a": 1, "b": 0})
    with pytest.raises(InputError, match="undeclared"):
        simulate(nl, {"a": 1, "b": 0, "cin": 0, "x": 1})
    with pytest.raises(InputError):
        simulate(nl, {"a": 2, "b": 0, "cin": 0})


def _gate(gid, kind, tau=1.0):
    return GateSpec(gid, kind, ORIGIN, tau)


def test_netlist_rejects_cycle():
    gates = (_gate("g1", GateKind.AND), _gate("g2", GateKind.BUF))
    wires = (Wire("i", "g1", 0), Wire("g2", "g1", 1), Wire("g1", "g2", 0))
    with pytest.raises(InputError, match="cyclic"):
        Netlist(gates, (PrimaryInput("i"),), wires)


def test_netlist_rejects_arity_mismatch():
    with pytest.raises(InputError, match="arity"):
        Netlist((_gate("n", GateKind.NOT),), (PrimaryInput("i"),), (Wire("i", "n", 0), Wire("i", "n", 1)))


def test_netlist_rejects_undriven_and_double_driven():
    with pytest.raises(InputError, match="undriven"):
        Netlist((_gate("g", GateKind.OR),), (PrimaryInput("i"),), (Wire("i", "g", 0),))
    with pytest.raises(InputError, match="more than one"):
        Netlist((_gate("g", GateKind.BUF),), (PrimaryInput("i"), PrimaryInput("j")),
                (Wire("i", "g", 0), Wire("j", "g", 0)))


def test_netlist_rejects_unknown_names():
    with pytest.raises(InputError):
        Netlist((_gate("g", GateKind.BUF),), (PrimaryInput("i"),), (Wire("zz", "g", 0),))
    with pytest.raises(InputError):
        Netlist((_gate("g", GateKind.BUF),), (PrimaryInput("i"),), (Wire("i", "g", 0),), (OutputTap("o", "zz"),))
    with pytest.raises(InputError, match="duplicate"):
        Netlist((_gate("i", GateKind.BUF),), (PrimaryInput("i"),), (Wire("i", "i", 0),))


def test_negative_tau_rejected():
    with pytest.raises(InputError):
        GateSpec("g", GateKind.AND, ORIGIN, -1.0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_simulate_matches_relaxation_oracle(seed):
    rng = random.Random(seed)
    nl = random_netlist(rng)
    values = {i.name: rng.randint(0, 1) for i in nl.inputs}
    tl = simulate(nl, values)
    ready, val, arrivals, observed = relax_timing(nl, values)
    for g in tl.gates:
        assert g.ready == pytest.approx(ready[g.id], abs=1e-12)
        assert g.value == val[g.id]
        assert list(g.arrivals) == pytest.approx(arrivals[g.id], abs=1e-12)
    for o in tl.outputs:
        assert o.observed_time == pytest.approx(observed[o.name], abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_zero_distance_matches_level_counting(seed):
    rng = random.Random(seed)
    nl = random_netlist(rng, colocated=True)
    nl = Netlist(tuple(GateSpec(g.id, g.kind, g.position, 1.0) for g in nl.gates),
                 tuple(PrimaryInput(i.name, i.position, 0.0) for i in nl.inputs), nl.wires, nl.outputs)
    tl = simulate(nl, {i.name: 1 for i in nl.inputs})
    depth = level_depth(nl)
    for g in tl.gates:
        assert g.ready == depth[g.id]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_placement_never_changes_values(seed):
    rng = random.Random(seed)
    nl = random_netlist(rng)
    values = {i.name: rng.randint(0, 1) for i in nl.inputs}
    moved = nl
    for g in nl.gates:
        moved = moved.with_gate_moved(g.id, TimeSpacePoint(rng.uniform(-5, 5), rng.uniform(-5, 5)))
    a, b = simulate(nl, values), simulate(moved, values)
    assert [g.value for g in a.gates] == [g.value for g in b.gates]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.01, 3.0))
def test_increasing_tau_is_monotone(seed, extra):
    rng = random.Random(seed)
    nl = random_netlist(rng)
    values = {i.name: 1 for i in nl.inputs}
    target = rng.choice(nl.gates).id
    slower = Netlist(tuple(GateSpec(g.id, g.kind, g.position, g.processing_time + (extra if g.id == target else 0))
                           for g in nl.gates), nl.inputs, nl.wires, nl.outputs)
    a, b = simulate(nl, values), simulate(slower, values)
    for ga, gb in zip(a.gates, b.gates):
        assert gb.ready >= ga.ready


def test_determinism(rng):
    nl = random_netlist(rng)
    values = {i.name: 1 for i in nl.inputs}
    assert simulate(nl, values) == simulate(nl, values)
    assert timeline_to_csv(simulate(nl, values)) == timeline_to_csv(simulate(nl, values))


# --- text format ---

ADDER_TEXT = """\
# one-bit adder, sum gate on the left
input a -1.5 0
input b -0.5 0 t=0
input cin 1.5 0 t=0.0
gate AND1 AND -1 0 tau=1
gate XOR1 XOR 0 0 tau=1
gate AND2 AND 1 0 tau=1
gate XOR2 XOR -1 0 tau=1
gate OR1 OR 0 0 tau=1   # carry
wire a -> AND1.pin0
wire b -> AND1.pin1
wire a -> XOR1.pin0
wire b -> XOR1.pin1
wire cin -> AND2.pin0
wire XOR1 -> AND2.pin1
wire XOR1 -> XOR2.pin0
wire cin -> XOR2.pin1
wire AND1 -> OR1.pin0
wire AND2 -> OR1.pin1
output sum XOR2 1 0
output cout OR1 0 0
"""


def test_parse_matches_builder():
    parsed = parse_netlist(ADDER_TEXT)
    built = build_one_bit_adder(default_adder_placement("left"), 1.0)
    assert set(parsed.gates) == set(built.gates)
    assert set(parsed.wires) == set(built.wires)
    for bits in BITS:
        v = adder_values(*bits)
        assert simulate(parsed, v) == simulate(built, v)


def test_format_roundtrip(rng):
    nl = random_netlist(rng)
    assert parse_netlist(format_netlist(nl)) == nl


@pytest.mark.parametrize("text, match", [
    ("gate g FOO 0 0 tau=1", "unknown gate kind"),
    ("input a zero 0", "malformed"),
    ("gate g AND 0 0 1", "tau="),
    ("wire a -> g", "pin"),
    ("bogus line", "cannot parse"),
])
def test_parse_errors(text, match):
    with pytest.raises(InputError, match=match):
        parse_netlist(text)


def test_timeline_csv_columns():
    tl = simulate(build_one_bit_adder(colocated_adder_placement(), 1.0), adder_values(1, 1, 1))
    lines = timeline_to_csv(tl).splitlines()
    assert lines[0] == ",".join(TIMELINE_COLUMNS)
    # 3 inputs + 10 gate pins + 2 taps
    assert len(lines) == 1 + 3 + 10 + 2
    xor2_cin = next(l for l in lines if l.startswith("XOR2,pin1"))
    assert float(xor2_cin.split(",")[-1]) == 1.0
    d = timeline_to_dict(tl)
    assert [o["value"] for o in d["outputs"]] == [1, 1]
