"""Synchronous message-passing execution with CONGEST bandwidth auditing.

A run proceeds in lockstep rounds. In round ``r`` every live node produces an
outbox, all messages are delivered, then every active node transitions on the
messages it received in round ``r`` (and only those). A node that emits a
terminal output gets exactly one further round to announce, then goes silent.

Payloads are :class:`Bits` values; the audit counts payload bits only.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, NamedTuple, Sequence

from .errors import ParameterError, RoundLimitExceeded
from .graph import Coloring, Graph

#: messages may carry at most ``CONGEST_FACTOR * ceil(log2(max(n, m)))`` bits
CONGEST_FACTOR = 2


@dataclass(frozen=True)
class Bits:
    """A length-delimited bit string."""

    value: int
    nbits: int

    def __post_init__(self):
        if self.value < 0 or self.value.bit_length() > self.nbits:
            raise ValueError(f"value {self.value} does not fit in {self.nbits} bits")


def width(palette: int) -> int:
    """Bits needed to write any value in ``[0, palette)``."""
    return max(1, (palette - 1).bit_length())


def pack(*fields: tuple[int, int]) -> Bits:
    """Concatenate ``(value, nbits)`` fields into one bit string."""
    value = 0
    total = 0
    for v, nb in fields:
        if v < 0 or v.bit_length() > nb:
            raise ValueError(f"field value {v} does not fit in {nb} bits")
        value = (value << nb) | v
        total += nb
    return Bits(value, total)


def unpack(bits: Bits, *widths: int) -> tuple[int, ...]:
    out = []
    shift = bits.nbits
    for nb in widths:
        shift -= nb
        out.append((bits.value >> shift) & ((1 << nb) - 1))
    return tuple(out)


def congest_budget(n: int, m: int, factor: int = CONGEST_FACTOR) -> int:
    return factor * max(1, (max(n, m) - 1).bit_length())


@dataclass(frozen=True)
class Halt:
    """Returned by ``initial_state`` to terminate a node before round 1."""

    output: Any
    state: Any = None


class NodeProgram:
    """Behavior of one node.

    ``transition`` must be a pure function of its arguments. Globals such as
    ``m`` and ``delta`` arrive through ``initial_state``, never over the wire.
    """

    def initial_state(self, node: int, color: int, ports: tuple[int, ...], m: int, delta: int):
        raise NotImplementedError

    def outbox(self, state, rnd: int) -> Bits | Mapping[int, Bits] | None:
        """A single :class:`Bits` is broadcast; a mapping addresses ports."""
        return None

    def transition(self, state, rnd: int, inbox: Mapping[int, Bits]) -> tuple[Any, Any]:
        """Return ``(new_state, output)``; ``output`` None keeps the node running."""
        raise NotImplementedError


@dataclass
class RunTrace:
    rounds_used: int = 0
    messages_sent: int = 0
    max_message_bits: int = 0
    per_round_active: list[int] = field(default_factory=list)
    per_round_messages: list[int] = field(default_factory=list)

    @property
    def quiescent_round(self) -> int:
        """Last round in which a node was active or a message was sent."""
        last = 0
        for i, (a, msgs) in enumerate(zip(self.per_round_active, self.per_round_messages), 1):
            if a or msgs:
                last = i
        return last


@dataclass
class MessageAudit:
    bit_budget: int
    violations: list[tuple[int, tuple[int, int], int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


class RunResult(NamedTuple):
    outputs: list
    trace: RunTrace
    audit: MessageAudit


def merge_runs(traces: Sequence[RunTrace], audits: Sequence[MessageAudit]) -> tuple[RunTrace, MessageAudit]:
    """Sequential composition: rounds and messages add up, worst message wins."""
    t = RunTrace()
    for tr in traces:
        t.rounds_used += tr.rounds_used
        t.messages_sent += tr.messages_sent
        t.max_message_bits = max(t.max_message_bits, tr.max_message_bits)
        t.per_round_active.extend(tr.per_round_active)
        t.per_round_messages.extend(tr.per_round_messages)
    budget = max((a.bit_budget for a in audits), default=0)
    a = MessageAudit(budget)
    offset = 0
    for tr, au in zip(traces, audits):
        a.violations.extend((r + offset, e, b) for r, e, b in au.violations)
        offset += tr.rounds_used
    return t, a


def report(trace: RunTrace, audit: MessageAudit) -> dict:
    return {
        "rounds_used": trace.rounds_used,
        "messages_sent": trace.messages_sent,
        "max_message_bits": trace.max_message_bits,
        "bit_budget": audit.bit_budget,
        "violations": [
            {"round": r, "edge": list(e), "bits": b} for r, e, b in audit.violations
        ],
    }


_ACTIVE, _ANNOUNCE, _DONE = 0, 1, 2


def run_sync(
    g: Graph,
    phi: Coloring,
    prog: NodeProgram | Sequence[NodeProgram],
    max_rounds: int,
    *,
    horizon: int | None = None,
    bit_budget: int | None = None,
    order_seed: int | None = None,
) -> RunResult:
    """Run ``prog`` on every node of ``g`` with input coloring ``phi``.

    ``horizon`` models a fixed, globally known schedule: the run lasts at least
    that many rounds even if all nodes terminate earlier, since no node can
    detect global termination. ``order_seed`` shuffles the intra-round
    evaluation order; results must not depend on it.
    """
    if max_rounds < 1:
        raise ParameterError("max_rounds must be >= 1")
    if len(phi) != g.n:
        raise ParameterError("coloring length differs from node count")
    n = g.n
    programs = [prog] * n if isinstance(prog, NodeProgram) else list(prog)
    if len(programs) != n:
        raise ParameterError("need one program per node")
    budget = congest_budget(n, phi.palette_size) if bit_budget is None else bit_budget
    trace = RunTrace()
    audit = MessageAudit(budget)

    order = list(range(n))
    if order_seed is not None:
        random.Random(order_seed).shuffle(order)

    states: list[Any] = [None] * n
    outputs: list[Any] = [None] * n
    status = [_ACTIVE] * n
    for v in order:
        s = programs[v].initial_state(v, phi.colors[v], g.adjacency[v], phi.palette_size, g.delta)
        if isinstance(s, Halt):
            states[v] = s.state
            outputs[v] = s.output
            status[v] = _DONE
        else:
            states[v] = s
    active = sum(1 for s in status if s == _ACTIVE)

    rnd = 0
    while True:
        if active == 0 and (horizon is None or rnd >= horizon):
            break
        if rnd >= max_rounds:
            if active:
                trace.rounds_used = rnd
                raise RoundLimitExceeded(
                    f"{active} node(s) still active after {max_rounds} rounds", trace, audit
                )
            break
        rnd += 1
        trace.per_round_active.append(active)

        outgoing: dict[int, Any] = {}
        for v in order:
            if status[v] == _DONE:
                continue
            msg = programs[v].outbox(states[v], rnd)
            if msg is not None:
                outgoing[v] = msg
            if status[v] == _ANNOUNCE:
                status[v] = _DONE

        inboxes: list[dict[int, Bits]] = [{} for _ in range(n)]
        sent = 0
        for u in sorted(outgoing):
            msg = outgoing[u]
            if isinstance(msg, Bits):
                targets = ((w, msg) for w in g.adjacency[u])
            else:
                nbrs = g.adjacency[u]
                for w in msg:
                    if w not in nbrs:
                        raise ParameterError(f"node {u} addressed non-neighbor {w}")
                targets = sorted(msg.items())
            for w, payload in targets:
                sent += 1
                nb = payload.nbits
                if nb > trace.max_message_bits:
                    trace.max_message_bits = nb
                if nb > budget:
                    audit.violations.append((rnd, (u, w), nb))
                inboxes[w][u] = payload
        trace.messages_sent += sent
        trace.per_round_messages.append(sent)

        for v in order:
            if status[v] != _ACTIVE:
                continue
            new_state, out = programs[v].transition(states[v], rnd, inboxes[v])
            states[v] = new_state
            if out is not None:
                outputs[v] = out
                status[v] = _ANNOUNCE
                active -= 1

    trace.rounds_used = rnd
    return RunResult(outputs, trace, audit)


def run_per_class(
    g: Graph,
    classes: Coloring,
    phi: Coloring,
    prog_factory: Callable[[int], NodeProgram],
    max_rounds: int,
    **kwargs,
) -> RunResult:
    """Run one program per class on the class-induced subgraphs, all in the same rounds.

    A node only sees neighbors of its own class. ``prog_factory(class_id)`` is
    called once per class.
    """
    if len(classes) != g.n:
        raise ParameterError("classes must assign every node")
    sub = g.subgraph_by_class(classes.colors)
    cache: dict[int, NodeProgram] = {}
    programs = []
    for v in range(g.n):
        c = classes.colors[v]
        if c not in cache:
            cache[c] = prog_factory(c)
        programs.append(cache[c])
    return run_sync(sub, phi, programs, max_rounds, **kwargs)
