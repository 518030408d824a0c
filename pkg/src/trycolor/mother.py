"""The batch trial coloring algorithm ("try colors from a polynomial sequence").

Every node with input color ``i`` walks the sequence ``(x mod k, p_i(x))``,
``x = 0..q-1``, in batches of ``k`` tuples. A tuple is *d-proper* when at most
``d`` neighbors try it in the same iteration or already hold it permanently;
a node adopts the first d-proper tuple of its batch and joins part ``j``.

Iteration ``j`` takes two engine rounds: in round ``2j-1`` uncolored nodes
broadcast their input color (neighbors rebuild the whole batch locally); in
round ``2j`` nodes that adopted announce the in-batch offset of their tuple.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .engine import Bits, MessageAudit, NodeProgram, RunTrace, run_sync, width
from .errors import Contradiction, ParameterError
from .field import SequenceFamily, choose_prime, log_ceil
from .graph import Coloring, Graph, Orientation, Partition


@dataclass(frozen=True)
class Bounds:
    f: int
    q: int
    X: Fraction
    R: int
    C: Fraction


@dataclass(frozen=True)
class MotherParams:
    m: int
    delta: int
    d: int
    k: int

    def __post_init__(self):
        if self.m < 1:
            raise ParameterError("m must be positive")
        if not 0 <= self.d <= self.delta - 1:
            raise ParameterError(f"need 0 <= d <= delta-1, got d={self.d}, delta={self.delta}")
        if self.k < 1:
            raise ParameterError("k must be >= 1")
        if self.k > x_value(self.m, self.delta, self.d):
            raise ParameterError(f"k={self.k} exceeds X={x_value(self.m, self.delta, self.d)}")


def x_value(m: int, delta: int, d: int) -> Fraction:
    """``X = 4 * delta/(d+1) * ceil(log_{delta/(d+1)} m)``."""
    return 4 * Fraction(delta, d + 1) * log_ceil(m, delta, d)


def max_k(m: int, delta: int, d: int) -> int:
    """Largest admissible batch size, ``floor(X)``; a single batch covers the sequence."""
    return math.floor(x_value(m, delta, d))


def derive_bounds(p: MotherParams) -> Bounds:
    f = log_ceil(p.m, p.delta, p.d)
    q = choose_prime(f, p.delta, p.d)
    X = x_value(p.m, p.delta, p.d)
    assert q <= X, (q, X)
    return Bounds(f=f, q=q, X=X, R=math.ceil(X / p.k), C=X * p.k)


def blocked_bound(p: MotherParams) -> Fraction:
    """At most ``2*f*delta/(d+1)`` tuples of a sequence can ever be blocked."""
    b = derive_bounds(p)
    z = Fraction(2 * b.f * p.delta, p.d + 1)
    assert z < b.q, (z, b.q)
    return z


@dataclass(frozen=True)
class MotherOutput:
    psi: Coloring
    orientation: Orientation
    partition: Partition
    trace: RunTrace
    audit: MessageAudit
    params: MotherParams
    bounds: Bounds
    q: int

    @property
    def iterations(self) -> int:
        """Scheduled iterations ``ceil(q/k)``: the run's length in the model."""
        return self.trace.rounds_used // 2

    @property
    def iterations_active(self) -> int:
        """Last iteration in which some node adopted a color."""
        return self.partition.part_count

    @property
    def batch_count(self) -> int:
        return -(-self.q // self.params.k)


class _State:
    __slots__ = ("row", "color", "perm_a", "perm_b", "perm_nodes", "senders", "adopted")

    def __init__(self, row, color, perm_a, perm_b, perm_nodes, senders, adopted):
        self.row = row
        self.color = color
        self.perm_a = perm_a  # first coordinates of permanently colored neighbors
        self.perm_b = perm_b
        self.perm_nodes = perm_nodes
        self.senders = senders  # {neighbor: input color} heard in the last trial round
        self.adopted = adopted  # (offset, value, iteration) once a tuple is chosen


class MotherProgram(NodeProgram):
    """Node program; ``table``/``row_of`` hold the locally computable sequences."""

    def __init__(self, fam: SequenceFamily, table: np.ndarray, row_of: dict[int, int]):
        self.fam = fam
        self.table = table
        self.row_of = row_of
        self.m_bits = width(fam.m)
        self.offset_bits = width(min(fam.k, fam.q))
        self.batches = fam.batch_count

    def initial_state(self, node, color, ports, m, delta):
        return _State(self.row_of[color], color, (), (), (), {}, None)

    def outbox(self, s: _State, rnd: int):
        if rnd % 2 == 1:
            if s.adopted is None:
                return Bits(s.color, self.m_bits)
            return None
        if s.adopted is not None and s.adopted[2] == rnd // 2:
            return Bits(s.adopted[0], self.offset_bits)
        return None

    def _batch(self, j: int) -> tuple[int, int]:
        x0 = (j - 1) * self.fam.k
        return x0, min(self.fam.k, self.fam.q - x0)

    def transition(self, s: _State, rnd: int, inbox):
        j = (rnd + 1) // 2
        if rnd % 2 == 1:
            senders = {u: b.value for u, b in inbox.items()}
            x0, length = self._batch(j)
            nbr_rows = np.fromiter((self.row_of[c] for c in senders.values()), dtype=np.int64,
                                   count=len(senders))
            l = _kernels.pick_tuple(
                self.table, s.row, nbr_rows, x0, length,
                np.asarray(s.perm_a, dtype=np.int64), np.asarray(s.perm_b, dtype=np.int64),
                self.fam.d,
            )
            adopted = None
            if l >= 0:
                adopted = (int(l), int(self.table[s.row, x0 + l]), j)
            elif j >= self.batches:
                raise Contradiction(
                    f"node with input color {s.color} exhausted its sequence uncolored"
                )
            return _State(s.row, s.color, s.perm_a, s.perm_b, s.perm_nodes, senders, adopted), None

        # announcement round: learn tuples adopted by neighbors this iteration
        x0, _ = self._batch(j)
        perm_a, perm_b, perm_nodes = list(s.perm_a), list(s.perm_b), list(s.perm_nodes)
        fresh = []
        for u, b in inbox.items():
            l = b.value
            val = int(self.table[self.row_of[s.senders[u]], x0 + l])
            perm_a.append(l)
            perm_b.append(val)
            perm_nodes.append(u)
            fresh.append((u, l, val))
        new = _State(s.row, s.color, tuple(perm_a), tuple(perm_b), tuple(perm_nodes), s.senders,
                     s.adopted)
        if s.adopted is None or s.adopted[2] != j:
            return new, None
        l, val, _ = s.adopted
        out_edges = [
            u for a, b, u in zip(s.perm_a, s.perm_b, s.perm_nodes) if a == l and b == val
        ]
        out_edges.extend(
            u for u, a, b in fresh if a == l and b == val and s.color < s.senders[u]
        )
        return new, (l * self.fam.q + val, j, tuple(sorted(out_edges)))


def sequence_table(fam: SequenceFamily, colors: Sequence[int]) -> tuple[np.ndarray, dict[int, int]]:
    distinct = sorted(set(int(c) for c in colors))
    return fam.table(distinct), {c: r for r, c in enumerate(distinct)}


def run_mother(
    g: Graph,
    phi: Coloring,
    p: MotherParams,
    *,
    order_seed: int | None = None,
    bit_budget: int | None = None,
    graph_view: Graph | None = None,
    skip_constants: bool | None = None,
) -> MotherOutput:
    """Run the algorithm to completion of its ``ceil(q/k)``-iteration schedule.

    ``graph_view`` lets a caller run on a class-filtered subgraph while keeping
    ``g``'s degree bound in the parameters.

    With ``d >= 1`` constant polynomials are skipped by default. A node whose
    polynomial is the constant ``c`` tries value ``c`` at every position, so a
    neighbor that adopted ``(l, c)`` while that node was also trying it keeps
    conflicting with a whole residue class of the node's remaining tuples, not
    just ``f`` of them; ``d + 1`` such neighbors can block it for good. With
    ``d = 0`` that adoption cannot happen, and the plain map is kept.
    """
    if phi.palette_size != p.m:
        raise ParameterError(f"input palette {phi.palette_size} differs from m={p.m}")
    view = graph_view or g
    if view.max_degree() > p.delta:
        raise ParameterError("graph degree exceeds delta")
    bounds = derive_bounds(p)
    if skip_constants is None:
        skip_constants = p.d > 0
    fam = SequenceFamily(p.m, p.delta, p.d, p.k, skip_constants)
    table, row_of = sequence_table(fam, phi.colors)
    prog = MotherProgram(fam, table, row_of)
    horizon = 2 * fam.batch_count
    res = run_sync(view, phi, prog, max_rounds=horizon, horizon=horizon,
                   order_seed=order_seed, bit_budget=bit_budget)
    colors = tuple(o[0] for o in res.outputs)
    parts = tuple(o[1] for o in res.outputs)
    directed = frozenset((v, u) for v, o in enumerate(res.outputs) for u in o[2])
    psi = Coloring(min(p.k, fam.q) * fam.q, colors)
    return MotherOutput(
        psi=psi,
        orientation=Orientation(directed),
        partition=Partition(max(parts, default=1), parts),
        trace=res.trace,
        audit=res.audit,
        params=p,
        bounds=bounds,
        q=fam.q,
    )
