import pytest

from trycolor.engine import (
    Bits, Halt, NodeProgram, congest_budget, merge_runs, pack, run_per_class, run_sync, unpack, width,
)
from trycolor.errors import ParameterError, RoundLimitExceeded
from trycolor.graph import Coloring, generate, greedy_input_coloring
from trycolor.mother import MotherParams, run_mother


class Echo(NodeProgram):
    def initial_state(self, node, color, ports, m, delta):
        return color

    def outbox(self, state, rnd):
        return Bits(state, 8)

    def transition(self, state, rnd, inbox):
        return state, tuple(sorted(b.value for b in inbox.values()))


class Immediate(NodeProgram):
    def initial_state(self, node, color, ports, m, delta):
        return Halt(color)


class Forever(NodeProgram):
    def initial_state(self, node, color, ports, m, delta):
        return 0

    def transition(self, state, rnd, inbox):
        return state, None


class Stamp(NodeProgram):
    """Sends the round number; records what arrived in each round."""

    def initial_state(self, node, color, ports, m, delta):
        return ()

    def outbox(self, state, rnd):
        return Bits(rnd, 8)

    def transition(self, state, rnd, inbox):
        seen = state + (tuple(b.value for b in inbox.values()),)
        return seen, (seen if rnd == 3 else None)


class Wide(NodeProgram):
    def __init__(self, nbits, sender):
        self.nbits = nbits
        self.sender = sender

    def initial_state(self, node, color, ports, m, delta):
        return node

    def outbox(self, state, rnd):
        if state == self.sender:
            return {p: Bits(0, self.nbits) for p in [1]}
        return None

    def transition(self, state, rnd, inbox):
        return state, 0


class ClassDegree(NodeProgram):
    def initial_state(self, node, color, ports, m, delta):
        return len(ports)

    def transition(self, state, rnd, inbox):
        return state, state


def test_echo_on_ring():
    g = generate("ring", 5, 2)
    phi = greedy_input_coloring(g, identity=True)
    res = run_sync(g, phi, Echo(), max_rounds=3)
    assert res.trace.rounds_used == 1
    assert res.trace.messages_sent == 10
    assert res.outputs[0] == (1, 4)


def test_immediate_termination_uses_no_rounds():
    g = generate("ring", 5, 2)
    res = run_sync(g, greedy_input_coloring(g), Immediate(), max_rounds=3)
    assert res.trace.rounds_used == 0
    assert res.outputs == list(greedy_input_coloring(g).colors)


def test_timeout_carries_partial_trace():
    g = generate("ring", 4, 2)
    with pytest.raises(RoundLimitExceeded) as err:
        run_sync(g, greedy_input_coloring(g), Forever(), max_rounds=4)
    assert err.value.trace.rounds_used == 4


def test_round_isolation():
    g = generate("ring", 4, 2)
    res = run_sync(g, greedy_input_coloring(g), Stamp(), max_rounds=5)
    assert res.outputs[0] == ((1, 1), (2, 2), (3, 3))


def test_audit_registers_exactly_one_violation():
    g = generate("ring", 4, 2)
    phi = greedy_input_coloring(g, identity=True)
    budget = congest_budget(4, 4)
    ok = run_sync(g, phi, Wide(budget, 0), max_rounds=2)
    assert ok.audit.passed and ok.trace.max_message_bits == budget
    bad = run_sync(g, phi, Wide(budget + 1, 0), max_rounds=2)
    assert len(bad.audit.violations) == 1
    assert bad.audit.violations[0] == (1, (0, 1), budget + 1)


def test_addressing_a_non_neighbor_is_rejected():
    g = generate("ring", 5, 2)

    class Bad(Wide):
        def outbox(self, state, rnd):
            return {2: Bits(0, 1)} if state == 0 else None

    with pytest.raises(ParameterError):
        run_sync(g, greedy_input_coloring(g), Bad(1, 0), max_rounds=2)


def test_order_independence_of_mother():
    g = generate("random_bounded_degree", 150, 6, 4)
    phi = greedy_input_coloring(g, identity=True)
    p = MotherParams(150, 6, 1, 2)
    a = run_mother(g, phi, p, order_seed=1)
    b = run_mother(g, phi, p, order_seed=99)
    c = run_mother(g, phi, p)
    assert a.psi == b.psi == c.psi
    assert a.orientation == b.orientation and a.partition == b.partition
    assert a.trace == b.trace


def test_mother_on_triangle_trace():
    g = generate("complete", 3, 2)
    out = run_mother(g, Coloring(3, (0, 1, 2)), MotherParams(3, 2, 0, 1))
    active = out.trace.per_round_active
    assert all(x >= y for x, y in zip(active, active[1:]))
    assert active[-1] == 0


def test_run_per_class_single_class_matches_run_sync():
    g = generate("complete", 3, 2)
    phi = Coloring(3, (0, 1, 2))
    one = run_per_class(g, Coloring(1, (0, 0, 0)), phi, lambda c: Echo(), max_rounds=2)
    plain = run_sync(g, phi, Echo(), max_rounds=2)
    assert one.outputs == plain.outputs and one.trace == plain.trace


def test_run_per_class_proper_classes_isolate_nodes():
    g = generate("ring", 4, 2)
    res = run_per_class(g, Coloring(2, (0, 1, 0, 1)), greedy_input_coloring(g), lambda c: ClassDegree(),
                        max_rounds=2)
    assert res.outputs == [0, 0, 0, 0]


def test_run_per_class_confines_views():
    g = generate("random_bounded_degree", 80, 6, 2)
    classes = Coloring(3, tuple(v % 3 for v in range(80)))
    res = run_per_class(g, classes, greedy_input_coloring(g, identity=True), lambda c: Echo(), max_rounds=2)
    for v, heard in enumerate(res.outputs):
        assert all(u % 3 == v % 3 for u in heard)
        assert set(heard) == {u for u in g.neighbors(v) if u % 3 == v % 3}


def test_pack_unpack_and_merge():
    b = pack((5, 3), (1, 2))
    assert b.nbits == 5 and unpack(b, 3, 2) == (5, 1)
    with pytest.raises(ValueError):
        pack((8, 3))
    g = generate("ring", 4, 2)
    r1 = run_sync(g, greedy_input_coloring(g), Echo(), max_rounds=1)
    t, a = merge_runs([r1.trace, r1.trace], [r1.audit, r1.audit])
    assert t.rounds_used == 2 and t.messages_sent == 16
