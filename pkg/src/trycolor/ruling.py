"""(2, r)-ruling sets from a proper coloring, and the coloring-first composition.

Colors are written as ``r`` base-``B`` digits, most significant first. Level
``t`` works inside groups sharing the top ``r - t`` digits: the candidates are
the members chosen at level ``t - 1`` (all nodes at level 1), and a greedy
maximal independent set is built by stepping through the next digit, one
value per round. Candidates in the same step lie in one subgroup, where they
are already independent, so they can join simultaneously. Each level adds at
most one hop of domination distance, and the last level covers the whole graph.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .engine import Bits, MessageAudit, NodeProgram, RunTrace, merge_runs, run_sync, width
from .errors import ParameterError
from .graph import Coloring, Graph
from .mother import MotherParams, run_mother
from .palette import DerivedResult, epsilon_coloring, eps_defect, greedy_to_target, root_ceil
from .verify import verify_coloring, verify_ruling


@dataclass(frozen=True)
class RulingSet:
    members: frozenset[int]
    r: int
    measured_rounds: int
    B: int = 0
    C: int = 0
    trace: RunTrace | None = field(default=None, compare=False, repr=False)
    audit: MessageAudit | None = field(default=None, compare=False, repr=False)
    coloring_rounds: int = 0
    coloring_palette: int = 0
    coloring_method: str = ""

    def as_dict(self) -> dict:
        return {
            "members": sorted(self.members),
            "r": self.r,
            "B": self.B,
            "C": self.C,
            "measured_rounds": self.measured_rounds,
            "coloring_rounds": self.coloring_rounds,
            "coloring_palette": self.coloring_palette,
            "coloring_method": self.coloring_method,
        }


def log_ceil_int(C: int, B: int) -> int:
    """Smallest ``r >= 0`` with ``B**r >= C``."""
    r, p = 0, 1
    while p < C:
        p *= B
        r += 1
    return r


def digit(color: int, B: int, pos: int) -> int:
    """Digit ``pos`` counted from the least significant end (0-based)."""
    return color // B**pos % B


class RulingProgram(NodeProgram):
    """Level ``t`` occupies rounds ``(t-1)*B + 1 .. t*B``; step ``s`` handles digit value ``s``.

    A node that joins the level-``t`` set announces its color in the next round;
    a candidate that hears of an earlier joiner in its group drops out.
    State: ``(color, joined_level, joined_now, heard_level, heard)``.
    """

    def __init__(self, B: int, levels: int, palette: int):
        self.B = B
        self.levels = levels
        self.bits = width(palette)

    def level_of(self, rnd: int) -> int:
        return (rnd - 1) // self.B + 1

    def initial_state(self, node, color, ports, m, delta):
        return (color, 0, False, 1, ())

    def outbox(self, s, rnd):
        return Bits(s[0], self.bits) if s[2] else None

    def transition(self, s, rnd, inbox):
        color, joined, _, heard_level, heard = s
        t = self.level_of(rnd)
        if heard_level != t:
            heard_level, heard = t, ()
        # announcements made now joined one round ago; only same-level ones block
        if inbox and rnd > 1 and self.level_of(rnd - 1) == t:
            shift = self.B**t
            heard = heard + tuple(b.value for b in inbox.values() if b.value // shift == color // shift)
        step = (rnd - 1) % self.B
        if joined != t - 1 or digit(color, self.B, t - 1) != step:
            return (color, joined, False, heard_level, heard), None
        if heard:
            return (color, joined, False, heard_level, heard), False
        if t == self.levels:
            return (color, t, True, heard_level, heard), True
        return (color, t, True, heard_level, heard), None


def ruling_from_coloring(g: Graph, psi: Coloring, B: int, *,
                         order_seed: int | None = None) -> RulingSet:
    """A (2, ceil(log_B C))-ruling set from a proper ``C``-coloring, in ``B * ceil(log_B C)`` rounds."""
    if B < 2:
        raise ParameterError("B must be >= 2")
    if len(psi) != g.n:
        raise ParameterError("coloring length differs from node count")
    if not psi.is_proper(g):
        raise ParameterError("ruling set needs a proper input coloring")
    C = psi.palette_size
    r = log_ceil_int(C, B)
    levels = max(r, 1)
    prog = RulingProgram(B, levels, C)
    res = run_sync(g, psi, prog, max_rounds=levels * B, order_seed=order_seed)
    members = frozenset(v for v, o in enumerate(res.outputs) if o)
    return RulingSet(members, r, res.trace.rounds_used, B, C, res.trace, res.audit)


def smallest_base(C: int, r: int) -> int:
    """Smallest integer ``B >= 2`` with ``B**r >= C``."""
    B = max(2, root_ceil(C, Fraction(1, r)))
    while B**r < C:
        B += 1
    while B > 2 and (B - 1) ** r >= C:
        B -= 1
    return B


def deltaplus1_coloring(g: Graph, phi: Coloring, *, order_seed: int | None = None) -> DerivedResult:
    """``k=1, d=0`` trial coloring followed by greedy elimination to ``delta+1`` colors."""
    delta = max(g.delta, 2)
    view = Graph(g.n, g.adjacency, delta)
    out = run_mother(view, phi, MotherParams(phi.palette_size, delta, 0, 1), order_seed=order_seed)
    fin = greedy_to_target(g, out.psi, g.delta + 1, order_seed=order_seed)
    trace, audit = merge_runs([out.trace, fin.trace], [out.audit, fin.audit])
    return DerivedResult(
        coloring=fin.coloring,
        rounds_used=trace.rounds_used,
        stage_log=[],
        trace=trace,
        audit=audit,
        checks={"proper": verify_coloring(g, fin.coloring, "proper")},
    )


def ruling_set_theorem(g: Graph, phi: Coloring, r: int, *,
                       order_seed: int | None = None) -> RulingSet:
    """Color with about ``delta^(2r/(r+2))`` colors, then take a ruling set with ``B**r >= C``.

    The coloring uses ``eps = (r-2)/(r+2)``; when ``delta^(1-eps) > delta/2``
    (always the case at ``r = 2``) a ``delta+1`` coloring is used instead.
    """
    if r < 2:
        raise ParameterError("r must be >= 2")
    if phi.palette_size > g.delta**4:
        raise ParameterError(f"needs m <= delta^4 = {g.delta ** 4}")
    eps = Fraction(r - 2, r + 2)
    try:
        eps_defect(g.delta, eps)
    except ParameterError:
        col = deltaplus1_coloring(g, phi, order_seed=order_seed)
        how = "deltaplus1"
    else:
        col = epsilon_coloring(g, phi, eps, order_seed=order_seed)
        how = "epsilon"
    if not col.checks["proper"].passed:
        raise ParameterError(f"{how} coloring stage produced an improper coloring")
    C = col.coloring.palette_size
    B = smallest_base(C, r)
    rs = ruling_from_coloring(g, col.coloring, B, order_seed=order_seed)
    return RulingSet(rs.members, r, rs.measured_rounds, B, C, rs.trace, rs.audit,
                     coloring_rounds=col.rounds_used, coloring_palette=C, coloring_method=how)


__all__ = [
    "RulingSet", "ruling_from_coloring", "ruling_set_theorem", "smallest_base",
    "log_ceil_int", "deltaplus1_coloring", "verify_ruling",
]
