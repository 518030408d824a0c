"""Validators for every guarantee the algorithms claim."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .engine import MessageAudit
from .errors import StructuralError
from .graph import Coloring, Graph, Orientation, Partition

KINDS = ("proper", "defect", "outdegree", "partition", "ruling", "bandwidth")


@dataclass
class ViolationReport:
    kind: str
    violations: list[tuple[tuple[int, ...], int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "pass": self.passed,
            "violations": [
                {"involved": list(inv), "measured": val, "bound": b}
                for inv, val, b in self.violations
            ],
        }


def _check_dims(g: Graph, psi: Coloring):
    if len(psi) != g.n:
        raise StructuralError(f"coloring has {len(psi)} entries for {g.n} nodes")


def same_color_counts(g: Graph, psi: Coloring) -> list[int]:
    c = psi.colors
    return [sum(1 for u in g.adjacency[v] if c[u] == c[v]) for v in range(g.n)]


def verify_coloring(
    g: Graph,
    psi: Coloring,
    mode: str = "proper",
    *,
    d: int | None = None,
    beta: int | None = None,
    orientation: Orientation | None = None,
    partition: Partition | None = None,
) -> ViolationReport:
    """Check ``psi`` in one of the modes ``proper``, ``defect``, ``outdegree``, ``partition``.

    Edge-level findings are ``((u, v), measured, bound)``; node-level ones
    ``((v,), measured, bound)``.
    """
    _check_dims(g, psi)
    col = psi.colors
    rep = ViolationReport(mode)
    if mode == "proper":
        rep.violations = [((u, v), 1, 0) for u, v in g.edges() if col[u] == col[v]]
    elif mode == "defect":
        if d is None:
            raise ValueError("defect mode needs d")
        cnt = same_color_counts(g, psi)
        rep.violations = [
            ((u, v), max(cnt[u], cnt[v]), d)
            for u, v in g.edges()
            if col[u] == col[v] and (cnt[u] > d or cnt[v] > d)
        ]
    elif mode == "outdegree":
        if beta is None or orientation is None:
            raise ValueError("outdegree mode needs beta and an orientation")
        for u, v in orientation.directed_edges:
            if not g.has_edge(u, v):
                raise StructuralError(f"oriented pair {u}->{v} is not an edge")
            if col[u] != col[v]:
                raise StructuralError(f"oriented edge {u}->{v} is bichromatic")
        directed = orientation.directed_edges
        for u, v in g.edges():
            if col[u] == col[v] and (u, v) not in directed and (v, u) not in directed:
                rep.violations.append(((u, v), 0, 1))
        for v, out in enumerate(orientation.outdegrees(g.n)):
            if out > beta:
                rep.violations.append(((v,), out, beta))
    elif mode == "partition":
        if d is None or partition is None:
            raise ValueError("partition mode needs d and a partition")
        if len(partition.part_index) != g.n:
            raise StructuralError("partition length differs from node count")
        part = partition.part_index
        for v in range(g.n):
            deg = sum(1 for u in g.adjacency[v] if col[u] == col[v] and part[u] == part[v])
            if deg > d:
                rep.violations.append(((v,), deg, d))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return rep


def distances_from(g: Graph, sources) -> list[int]:
    """Multi-source BFS hop distances; -1 for unreachable nodes."""
    dist = [-1] * g.n
    dq = deque()
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            dq.append(s)
    while dq:
        v = dq.popleft()
        for u in g.adjacency[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                dq.append(u)
    return dist


def verify_ruling(g: Graph, members, r: int) -> ViolationReport:
    """Independence plus domination within ``r`` hops, both exact."""
    members = sorted(set(members))
    for v in members:
        if not 0 <= v < g.n:
            raise StructuralError(f"member {v} is not a node")
    rep = ViolationReport("ruling")
    inset = set(members)
    for u, v in g.edges():
        if u in inset and v in inset:
            rep.violations.append(((u, v), 1, 0))
    for v, dv in enumerate(distances_from(g, members)):
        if dv < 0 or dv > r:
            rep.violations.append(((v,), dv, r))
    return rep


def verify_bandwidth(audit: MessageAudit) -> ViolationReport:
    rep = ViolationReport("bandwidth")
    rep.violations = [(e, bits, audit.bit_budget) for _, e, bits in audit.violations]
    return rep
