"""Derived coloring procedures built on the batch trial algorithm.

Parameter choices for the six corollary variants, iterated Linial-style
reduction, one-class-per-round greedy elimination, the defective-then-refine
composition and block chopping down to ``delta + 1`` colors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import (
    Bits, Halt, MessageAudit, NodeProgram, RunTrace, merge_runs, run_per_class, run_sync, width,
)
from .errors import ParameterError
from .field import choose_prime, log_ceil
from .graph import Coloring, Graph, Orientation, Partition
from .mother import MotherOutput, MotherParams, max_k, run_mother, x_value
from .verify import ViolationReport, verify_coloring


@dataclass(frozen=True)
class Stage:
    name: str
    palette_before: int
    palette_after: int
    rounds: int


@dataclass
class DerivedResult:
    coloring: Coloring
    rounds_used: int
    stage_log: list[Stage]
    trace: RunTrace
    audit: MessageAudit
    orientation: Orientation | None = None
    partition: Partition | None = None
    mother: MotherOutput | None = None
    checks: dict[str, ViolationReport] = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    @property
    def colors_used(self) -> int:
        return self.coloring.distinct()

    @property
    def palette(self) -> int:
        return self.coloring.palette_size

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.checks.values()) and self.audit.passed


def _require_proper(g: Graph, phi: Coloring):
    if len(phi) != g.n:
        raise ParameterError("coloring length differs from node count")
    if not phi.is_proper(g):
        raise ParameterError("input coloring is not proper")


# -------------------------------------------------------------- corollary parts


def corollary_params(part: int, m: int, delta: int, *, k: int | None = None,
                     d: int | None = None) -> MotherParams:
    """Map a corollary variant to the parameters of the batch trial algorithm."""
    if part in (1, 2, 3):
        if m > delta**4:
            raise ParameterError(f"part {part} needs m <= delta^4 = {delta ** 4}, got {m}")
        if part == 1:
            return MotherParams(m, delta, 0, max_k(m, delta, 0))
        if part == 2:
            if k is None:
                raise ParameterError("part 2 needs k")
            return MotherParams(m, delta, 0, k)
        return MotherParams(m, delta, 0, -(-delta // 16))
    if part in (4, 5, 6):
        if d is None:
            raise ParameterError(f"part {part} needs d (beta for part 4)")
        if delta < 2 * (d + 1):
            raise ParameterError(f"part {part} needs delta/(d+1) >= 2, got delta={delta}, d={d}")
        if part == 5:
            return MotherParams(m, delta, d, max_k(m, delta, d))
        return MotherParams(m, delta, d, 1)
    raise ParameterError(f"part must be in 1..6, got {part}")


def run_corollary(g: Graph, phi: Coloring, part: int, *, k: int | None = None,
                  d: int | None = None, order_seed: int | None = None) -> DerivedResult:
    """Run one corollary variant and verify its guarantee."""
    _require_proper(g, phi)
    delta = g.delta
    p = corollary_params(part, phi.palette_size, delta, k=k, d=d)
    out = run_mother(g, phi, p, order_seed=order_seed)
    psi = out.psi
    checks = {}
    if part == 6:
        # final color: the tuple (psi, part index)
        batches = out.batch_count
        psi = Coloring(
            psi.palette_size * batches,
            tuple(c * batches + (j - 1) for c, j in zip(out.psi.colors, out.partition.part_index)),
        )
    if part in (1, 2, 3):
        checks["proper"] = verify_coloring(g, psi, "proper")
    elif part == 4:
        checks["outdegree"] = verify_coloring(g, psi, "outdegree", beta=p.d, orientation=out.orientation)
    else:
        checks["defect"] = verify_coloring(g, psi, "defect", d=p.d)
    checks["partition"] = verify_coloring(g, out.psi, "partition", d=p.d, partition=out.partition)
    bound = {1: 256 * delta**2, 2: 16 * delta * p.k, 3: 16 * delta * p.k}.get(part)
    info = {"part": part, "d": p.d, "k": p.k, "q": out.q, "f": out.bounds.f,
            "iterations": out.iterations, "iterations_active": out.iterations_active,
            "palette_bound": bound}
    return DerivedResult(
        coloring=psi,
        rounds_used=out.trace.rounds_used,
        stage_log=[Stage(f"corollary-{part}", phi.palette_size, psi.palette_size, out.trace.rounds_used)],
        trace=out.trace,
        audit=out.audit,
        orientation=out.orientation,
        partition=out.partition,
        mother=out,
        checks=checks,
        info=info,
    )


def linial_fixed_point(g: Graph, phi: Coloring, *, order_seed: int | None = None) -> DerivedResult:
    """Apply the one-iteration ``d=0, k=floor(X)`` step until the palette stops shrinking.

    Stops once the palette is at most ``256 * delta**2`` or the next step
    would not make it smaller.
    """
    _require_proper(g, phi)
    delta = g.delta
    cur = phi
    stages, traces, audits = [], [], []
    last = None
    while cur.palette_size > 256 * delta**2:
        m = cur.palette_size
        p = MotherParams(m, delta, 0, max_k(m, delta, 0))
        q = choose_prime(log_ceil(m, delta, 0), delta, 0)
        if q * q >= m:
            break
        last = run_mother(g, cur, p, order_seed=order_seed)
        stages.append(Stage("linial", m, last.psi.palette_size, last.trace.rounds_used))
        traces.append(last.trace)
        audits.append(last.audit)
        cur = last.psi
    trace, audit = merge_runs(traces, audits) if traces else (RunTrace(), MessageAudit(0))
    return DerivedResult(
        coloring=cur,
        rounds_used=trace.rounds_used,
        stage_log=stages,
        trace=trace,
        audit=audit,
        mother=last,
        checks={"proper": verify_coloring(g, cur, "proper")},
        info={"outer_iterations": len(stages)},
    )


# ------------------------------------------------------------- greedy finisher


class _GreedyState:
    __slots__ = ("color", "nbr", "final")

    def __init__(self, color, nbr, final=None):
        self.color = color
        self.nbr = nbr
        self.final = final


class GreedyProgram(NodeProgram):
    """Nodes of class ``c >= target`` recolor in round ``palette - c``.

    Round 1: everyone broadcasts its color. Afterwards only freshly recolored
    nodes announce their new color.
    """

    def __init__(self, palette: int, target: int):
        self.palette = palette
        self.target = target

    def initial_state(self, node, color, ports, m, delta):
        if self.palette <= self.target:
            return Halt(color)
        return _GreedyState(color, {})

    def outbox(self, s: _GreedyState, rnd):
        if rnd == 1:
            return Bits(s.color, width(self.palette))
        if s.final is not None and s.color >= self.target:
            return Bits(s.final, width(self.target))
        return None

    def transition(self, s: _GreedyState, rnd, inbox):
        nbr = dict(s.nbr)
        for u, b in inbox.items():
            nbr[u] = b.value
        if s.color < self.target:
            return _GreedyState(s.color, nbr, s.color), s.color
        if rnd == self.palette - s.color:
            taken = set(nbr.values())
            c = 0
            while c in taken:
                c += 1
            if c >= self.target:
                raise ParameterError("no free color below target; degree exceeds target - 1")
            return _GreedyState(s.color, nbr, c), c
        return _GreedyState(s.color, nbr), None


def greedy_to_target(g: Graph, psi: Coloring, target: int, *,
                     order_seed: int | None = None) -> DerivedResult:
    """Eliminate color classes ``palette-1`` down to ``target``, one per round."""
    if target <= g.delta:
        raise ParameterError(f"target {target} must exceed delta={g.delta}")
    _require_proper(g, psi)
    P = psi.palette_size
    res = run_sync(g, psi, GreedyProgram(P, target), max_rounds=max(1, P - target + 1),
                   order_seed=order_seed)
    out = Coloring(min(P, target), tuple(res.outputs))
    return DerivedResult(
        coloring=out,
        rounds_used=res.trace.rounds_used,
        stage_log=[Stage("greedy", P, out.palette_size, res.trace.rounds_used)],
        trace=res.trace,
        audit=res.audit,
        checks={"proper": verify_coloring(g, out, "proper")},
    )


# ------------------------------------------------------ defective composition


def root_ceil(delta: int, expo: Fraction) -> int:
    """Exact ``ceil(delta ** expo)`` for rational ``expo >= 0``."""
    a, b = expo.numerator, expo.denominator
    target = delta**a
    d = max(1, int(round(delta ** float(expo))) - 1)
    while d**b < target:
        d += 1
    while d > 1 and (d - 1) ** b >= target:
        d -= 1
    return d


def eps_defect(delta: int, eps: Fraction) -> int:
    """``d = ceil(delta^(1-eps))`` after checking ``delta^(1-eps) <= delta/2``."""
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ParameterError("eps must lie in (0, 1)")
    e = 1 - eps
    a, b = e.numerator, e.denominator
    # delta^(a/b) <= delta/2  <=>  delta^a * 2^b <= delta^b
    if delta**a * 2**b > delta**b:
        raise ParameterError(f"delta^(1-eps) exceeds delta/2 for delta={delta}, eps={eps}")
    return root_ceil(delta, e)


def epsilon_coloring(g: Graph, phi: Coloring, eps, *, order_seed: int | None = None) -> DerivedResult:
    """Defective coloring with ``d = ceil(delta^(1-eps))``, then refine every class.

    Stage A is corollary part 6. Stage B colors each class (max degree ``d``)
    with the ``k=1`` trial algorithm and greedy elimination to ``d'+1`` colors,
    all classes at once. The output is the pair (class, inner color).
    """
    eps = Fraction(eps)
    delta = g.delta
    if phi.palette_size > delta**4:
        raise ParameterError(f"needs m <= delta^4 = {delta ** 4}")
    d = eps_defect(delta, eps)
    a = run_corollary(g, phi, 6, d=d, order_seed=order_seed)
    chi = a.coloring
    inner_delta = max(d, 2)
    sub = Graph(g.n, g.subgraph_by_class(chi.colors).adjacency, inner_delta)
    inner = run_mother(sub, phi, MotherParams(phi.palette_size, inner_delta, 0, 1),
                       order_seed=order_seed)
    fin = greedy_to_target(sub, inner.psi, inner_delta + 1, order_seed=order_seed)
    w = fin.coloring.palette_size
    out = Coloring(chi.palette_size * w, tuple(c * w + x for c, x in zip(chi.colors, fin.coloring.colors)))
    trace, audit = merge_runs([a.trace, inner.trace, fin.trace], [a.audit, inner.audit, fin.audit])
    stages = [
        Stage("defective", phi.palette_size, chi.palette_size, a.rounds_used),
        Stage("class-trial", phi.palette_size, inner.psi.palette_size, inner.trace.rounds_used),
        Stage("class-greedy", inner.psi.palette_size, w, fin.rounds_used),
    ]
    checks = {
        "defect": a.checks["defect"],
        "class-proper": verify_coloring(sub, fin.coloring, "proper"),
        "proper": verify_coloring(g, out, "proper"),
    }
    return DerivedResult(
        coloring=out,
        rounds_used=trace.rounds_used,
        stage_log=stages,
        trace=trace,
        audit=audit,
        checks=checks,
        info={"eps": str(eps), "d": d, "inner_delta": inner_delta, "defective_palette": chi.palette_size},
    )


# ------------------------------------------------------------------- chopping


def chop_to_deltaplus1(g: Graph, phi: Coloring, eps, *, order_seed: int | None = None) -> DerivedResult:
    """Split the palette into blocks of ``ceil((1+eps)(delta+1))`` colors and reduce
    every block to ``delta+1`` colors in parallel; repeat until ``delta+1`` remain.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ParameterError("eps must be positive")
    _require_proper(g, phi)
    t = g.delta + 1
    size = math.ceil((1 + eps) * t)
    cur = phi
    stages, traces, audits = [], [], []
    while cur.palette_size > t:
        P = cur.palette_size
        blocks = -(-P // size)
        bsize = [min(size, P - b * size) for b in range(blocks)]
        block_of = Coloring(blocks, tuple(c // size for c in cur.colors))
        local = Coloring(size, tuple(c % size for c in cur.colors))
        res = run_per_class(
            g, block_of, local,
            lambda b: GreedyProgram(bsize[b], t),
            max_rounds=size + 1, order_seed=order_seed,
        )
        new_pal = sum(min(s, t) for s in bsize)
        cols = tuple(b * t + x for b, x in zip(block_of.colors, res.outputs))
        nxt = Coloring(new_pal, cols)
        stages.append(Stage("chop", P, new_pal, res.trace.rounds_used))
        traces.append(res.trace)
        audits.append(res.audit)
        cur = nxt
    trace, audit = merge_runs(traces, audits) if traces else (RunTrace(), MessageAudit(0))
    return DerivedResult(
        coloring=cur,
        rounds_used=trace.rounds_used,
        stage_log=stages,
        trace=trace,
        audit=audit,
        checks={"proper": verify_coloring(g, cur, "proper")},
        info={"phases": len(stages), "block_size": size},
    )
