"""One-round color reduction, its exact limit ``k_max``, and a configuration-graph oracle.

A one-round algorithm sees only its own color ``c`` and the set ``S`` of its
neighbors' colors, so it is a table ``(c, S) -> output``. Two views clash
when they can sit on adjacent nodes (``c' in S`` and ``c in S'``); valid
tables are exactly the proper colorings of the configuration graph.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .engine import Bits, MessageAudit, NodeProgram, RunTrace, run_sync, width
from .errors import BudgetExceeded, Contradiction, ParameterError, SizeCapExceeded
from .graph import Coloring, Graph

DEFAULT_CAP = 1200
DEFAULT_BUDGET = 10**10


def k_cap(delta: int) -> int:
    return min(delta - 1, (delta + 3) // 2)


def k_max(delta: int, m: int, strict: bool = False) -> int:
    """Largest ``k`` with ``m >= k*(delta-k+3)``; 0 when no color can be removed.

    Below ``m = delta+1`` the input is not a valid palette for the bound and a
    :class:`ParameterError` is raised. Above ``delta**2/4 + 3*delta/2 + 9/4``
    the value saturates at the cap on ``k`` unless ``strict`` is set.
    """
    if delta < 1:
        raise ParameterError("delta must be >= 1")
    if m < delta + 1:
        raise ParameterError(f"m={m} below delta+1={delta + 1}")
    if strict and 4 * m > delta * delta + 6 * delta + 9:
        raise ParameterError(f"m={m} above the range (delta+3)^2/4")
    best = 0
    for k in range(1, k_cap(delta) + 1):
        if m >= k * (delta - k + 3):
            best = k
    return best


@dataclass(frozen=True)
class ReductionParams:
    delta: int
    k: int
    m: int

    def __post_init__(self):
        if not 1 <= self.k <= k_cap(self.delta):
            raise ParameterError(
                f"k={self.k} outside [1, {k_cap(self.delta)}] for delta={self.delta}"
            )
        if self.m < self.k * (self.delta - self.k + 3):
            raise ParameterError(
                f"m={self.m} below k(delta-k+3)={self.k * (self.delta - self.k + 3)}"
            )

    @property
    def ell(self) -> int:
        return self.k * (self.delta - self.k + 2)

    @property
    def width(self) -> int:
        """Size of each regime, ``delta-k+2``."""
        return self.delta - self.k + 2

    @property
    def out_palette(self) -> int:
        return self.m - self.k


@dataclass(frozen=True)
class ColorRegimes:
    regimes: tuple[tuple[int, ...], ...]

    def __call__(self, i: int, j: int) -> int:
        return self.regimes[i][j]


def regimes(delta: int, k: int) -> ColorRegimes:
    w = delta - k + 2
    return ColorRegimes(tuple(tuple(i * w + j for j in range(w)) for i in range(k)))


@dataclass(frozen=True)
class Decision:
    option: int  # 1 keep, 2 first free in [0, delta], 3 regime pick, 0 high color shifted down
    color: int
    free: frozenset[int] | None = None  # F(v) for option 3


def node_rule(p: ReductionParams, own: int, nbrs: Iterable[int]) -> Decision:
    """Output of a node with color ``own`` whose neighbors hold the colors ``nbrs``."""
    ell, k = p.ell, p.k
    if own < ell:
        return Decision(1, own)
    if own >= ell + k:
        # outside the k recoloring colors: kept, shifted below the removed ones
        return Decision(0, own - k)
    nbrs = set(nbrs)
    seen = {c - ell for c in nbrs if ell <= c < ell + k}
    if not seen:
        c = 0
        while c in nbrs:
            c += 1
        if c > p.delta:
            raise Contradiction(f"more than delta={p.delta} neighbor colors: {sorted(nbrs)}")
        return Decision(2, c)
    i = own - ell
    w = p.width
    free = set(range(i * w, (i + 1) * w))
    for j in range(k):
        if j in seen or j == i:
            continue
        free.add(j * w + (i if j > i else i - 1))
    avail = sorted(free - nbrs)
    if not avail:
        raise Contradiction(f"no free color for recoloring index {i} with neighbors {sorted(nbrs)}")
    return Decision(3, avail[0], frozenset(free))


class ReduceProgram(NodeProgram):
    def __init__(self, p: ReductionParams):
        self.p = p
        self.bits = width(p.m)

    def initial_state(self, node, color, ports, m, delta):
        return color

    def outbox(self, state, rnd):
        return Bits(state, self.bits) if rnd == 1 else None

    def transition(self, state, rnd, inbox):
        dec = node_rule(self.p, state, (b.value for b in inbox.values()))
        return state, dec


@dataclass(frozen=True)
class ReductionRun:
    coloring: Coloring
    decisions: tuple[Decision, ...]
    trace: RunTrace
    audit: MessageAudit


def reduce_one_round(g: Graph, phi: Coloring, k: int, *, check: bool = True,
                     bit_budget: int | None = None) -> ReductionRun:
    """Remove ``k`` colors in a single round; ``check`` asserts the free sets are disjoint."""
    p = ReductionParams(g.delta, k, phi.palette_size)
    res = run_sync(g, phi, ReduceProgram(p), max_rounds=1, bit_budget=bit_budget)
    decisions = tuple(res.outputs)
    if check:
        for u, v in g.edges():
            du, dv = decisions[u], decisions[v]
            if du.free is not None and dv.free is not None and du.free & dv.free:
                raise Contradiction(f"free sets of adjacent nodes {u}, {v} intersect")
    out = Coloring(p.out_palette, tuple(d.color for d in decisions))
    return ReductionRun(out, decisions, res.trace, res.audit)


# ------------------------------------------------------------ configuration graph


def config_vertex_count(delta: int, m: int) -> int:
    return m * sum(math.comb(m - 1, i) for i in range(min(delta, m - 1) + 1))


@dataclass(frozen=True)
class ConfigGraph:
    delta: int
    m: int
    vertices: tuple[tuple[int, frozenset[int]], ...]
    offsets: np.ndarray = field(repr=False)
    targets: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.targets) // 2

    def index(self, c: int, s: Iterable[int]) -> int:
        return self._index[(c, frozenset(s))]

    @property
    def _index(self) -> dict:
        try:
            return self.__dict__["_idx"]
        except KeyError:
            idx = {v: i for i, v in enumerate(self.vertices)}
            object.__setattr__(self, "_idx", idx)
            return idx

    def neighbors(self, i: int) -> np.ndarray:
        return self.targets[self.offsets[i] : self.offsets[i + 1]]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, int(j)) for i in range(self.n) for j in self.neighbors(i) if i < j]

    def has_edge(self, u: tuple[int, Iterable[int]], v: tuple[int, Iterable[int]]) -> bool:
        (c, s), (c2, s2) = u, v
        return c != c2 and c2 in set(s) and c in set(s2)

    def clique(self) -> list[int]:
        """The views ``(x, T - {x})`` for the first ``min(delta+1, m)`` colors ``T``."""
        t = frozenset(range(min(self.delta + 1, self.m)))
        return [self.index(x, t - {x}) for x in sorted(t)]


def build_config_graph(delta: int, m: int, cap: int = DEFAULT_CAP) -> ConfigGraph:
    if delta < 1 or m < 1:
        raise ParameterError("need delta >= 1 and m >= 1")
    count = config_vertex_count(delta, m)
    if count > cap:
        raise SizeCapExceeded(f"config graph for delta={delta}, m={m} has {count} vertices > cap {cap}")
    verts = []
    for c in range(m):
        others = [x for x in range(m) if x != c]
        for size in range(min(delta, m - 1) + 1):
            verts.extend((c, frozenset(s)) for s in combinations(others, size))
    # views of color c containing c2, for each ordered pair
    holding: dict[tuple[int, int], list[int]] = {}
    for i, (c, s) in enumerate(verts):
        for x in s:
            holding.setdefault((c, x), []).append(i)
    adj: list[list[int]] = [[] for _ in verts]
    for (c, x), left in holding.items():
        if c > x:
            continue
        right = holding.get((x, c), [])
        for i in left:
            adj[i].extend(right)
            for j in right:
                adj[j].append(i)
    offsets = np.zeros(len(verts) + 1, dtype=np.int64)
    offsets[1:] = np.cumsum([len(a) for a in adj])
    targets = np.fromiter((j for a in adj for j in sorted(a)), dtype=np.int64, count=int(offsets[-1]))
    return ConfigGraph(delta, m, tuple(verts), offsets, targets)


def edge_witness(cg: ConfigGraph, u: tuple[int, Iterable[int]], v: tuple[int, Iterable[int]]):
    """A concrete graph in which views ``u`` and ``v`` occur on adjacent nodes.

    Two stars: centers ``0`` and ``1`` are joined; each center gets one leaf per
    remaining color of its view. Returns ``(graph, coloring)``.
    """
    (c, s), (c2, s2) = (u[0], frozenset(u[1])), (v[0], frozenset(v[1]))
    if not cg.has_edge((c, s), (c2, s2)):
        raise ParameterError("views are not adjacent in the configuration graph")
    colors = [c, c2]
    edges = [(0, 1)]
    for center, rest in ((0, s - {c2}), (1, s2 - {c})):
        for x in sorted(rest):
            edges.append((center, len(colors)))
            colors.append(x)
    g = Graph.from_edges(len(colors), edges, cg.delta)
    return g, Coloring(cg.m, tuple(colors))


# ---------------------------------------------------------------- tables


@dataclass(frozen=True)
class AlgTable:
    delta: int
    m: int
    q_out: int
    colors: tuple[int, ...]  # aligned with ConfigGraph.vertices

    def lookup(self, cg: ConfigGraph, c: int, s: Iterable[int]) -> int:
        return self.colors[cg.index(c, s)]

    def conflicts(self, cg: ConfigGraph) -> list[tuple[int, int]]:
        col = self.colors
        return [(i, j) for i, j in cg.edges() if col[i] == col[j]]

    def is_proper(self, cg: ConfigGraph) -> bool:
        if any(not 0 <= x < self.q_out for x in self.colors):
            return False
        col = np.asarray(self.colors)
        src = np.repeat(np.arange(cg.n), np.diff(cg.offsets))
        return not np.any(col[src] == col[cg.targets])

    def hardcoded(self, cg: ConfigGraph) -> list[int]:
        """Input colors whose output never depends on the neighborhood."""
        out: dict[int, set[int]] = {}
        for (c, _), x in zip(cg.vertices, self.colors):
            out.setdefault(c, set()).add(x)
        return sorted(c for c, xs in out.items() if len(xs) == 1)


def table_from_reduction(delta: int, m: int, k: int, cg: ConfigGraph | None = None) -> AlgTable:
    p = ReductionParams(delta, k, m)
    cg = cg or build_config_graph(delta, m)
    cols = tuple(node_rule(p, c, s).color for c, s in cg.vertices)
    return AlgTable(delta, m, p.out_palette, cols)


# ---------------------------------------------------------------- exact oracle


@dataclass(frozen=True)
class Verdict:
    q_out: int
    satisfiable: bool
    table: AlgTable | None
    expansions: int
    method: str
    seconds: float = field(compare=False, default=0.0)


def _table_from_masks(cg: ConfigGraph, q: int, masks) -> AlgTable:
    full = (1 << q) - 1
    cols = []
    for c, s in cg.vertices:
        inter = full
        for a in s:
            inter &= masks[c][a]
        assert inter, "mask solution leaves a view without colors"
        cols.append((inter & -inter).bit_length() - 1)
    return AlgTable(cg.delta, cg.m, q, tuple(cols))


def colorability(cg: ConfigGraph, q_out: int, *, method: str = "mask",
                 budget: int = DEFAULT_BUDGET) -> Verdict:
    """Decide whether the configuration graph has a proper ``q_out``-coloring.

    ``mask`` searches pairwise color masks (see ``_kernels.mask_search``);
    ``dsatur`` runs branch and bound directly on the graph. Both are exact; a
    budget overrun raises :class:`BudgetExceeded` rather than guessing.
    """
    if q_out < 1:
        return Verdict(q_out, cg.m == 0, None, 0, method)
    t0 = time.perf_counter()
    if method == "mask":
        status, masks, exp = _kernels.mask_search(cg.delta, cg.m, q_out, budget)
        table = _table_from_masks(cg, q_out, masks) if status == 1 else None
    elif method == "dsatur":
        status, cols, exp = _kernels.dsatur_search(
            cg.n, cg.offsets, cg.targets, q_out, budget, cg.clique()
        )
        table = AlgTable(cg.delta, cg.m, q_out, tuple(cols)) if status == 1 else None
    else:
        raise ParameterError(f"unknown method {method!r}")
    dt = time.perf_counter() - t0
    if status < 0:
        raise BudgetExceeded(f"oracle budget of {budget} expansions exhausted", exp)
    if table is not None and not table.is_proper(cg):
        raise Contradiction("oracle witness is not a proper coloring")
    return Verdict(q_out, status == 1, table, exp, method, dt)


def candidate_colors(cg: ConfigGraph, table: AlgTable, x: int, rest: Iterable[int]) -> set[int]:
    """Outputs of views ``(x, B)`` with ``B`` containing ``rest``."""
    rest = frozenset(rest)
    return {col for (c, s), col in zip(cg.vertices, table.colors) if c == x and rest <= s}


def candidate_disjointness(cg: ConfigGraph, table: AlgTable, t: Sequence[int]) -> dict:
    """For ``x`` in ``t``, candidate sets of ``(x, t - {x})``; they must be pairwise disjoint."""
    ts = frozenset(t)
    cands = {x: candidate_colors(cg, table, x, ts - {x}) for x in sorted(ts)}
    clashes = [
        (a, b) for a, b in combinations(sorted(ts), 2) if cands[a] & cands[b]
    ]
    return {"T": sorted(ts), "candidates": {x: sorted(v) for x, v in cands.items()},
            "disjoint": not clashes, "clashes": clashes}


@dataclass(frozen=True)
class TightnessReport:
    delta: int
    m: int
    k_max: int
    vertices: int
    edges: int
    upper: Verdict
    lower: Verdict | None
    diagnostic: dict | None

    @property
    def passed(self) -> bool:
        return self.upper.satisfiable and (self.lower is None or not self.lower.satisfiable)

    def as_dict(self, timings: bool = False) -> dict:
        def verdict(v: Verdict | None):
            if v is None:
                return None
            d = {"q": v.q_out, "satisfiable": v.satisfiable, "expansions": v.expansions,
                 "method": v.method}
            if timings:
                d["seconds"] = round(v.seconds, 3)
            return d

        return {
            "delta": self.delta, "m": self.m, "k_max": self.k_max,
            "config_vertices": self.vertices, "config_edges": self.edges,
            "upper": verdict(self.upper), "lower": verdict(self.lower),
            "diagnostic": self.diagnostic, "pass": self.passed,
        }


def tightness_check(delta: int, m: int, *, method: str = "mask", budget: int = DEFAULT_BUDGET,
                    cap: int = DEFAULT_CAP) -> TightnessReport:
    """``m - k_max`` colors are achievable in one round and ``m - k_max - 1`` are not."""
    km = k_max(delta, m)
    cg = build_config_graph(delta, m, cap)
    upper = colorability(cg, m - km, method=method, budget=budget)
    lower = colorability(cg, m - km - 1, method=method, budget=budget) if m - km - 1 >= 1 else None
    diag = None
    if upper.table is not None:
        t = list(range(m - km - 1, m))
        diag = candidate_disjointness(cg, upper.table, t)
        diag["hardcoded"] = upper.table.hardcoded(cg)
    return TightnessReport(delta, m, km, cg.n, cg.edge_count, upper, lower, diag)
