"""Graph model, colorings, instance generators and the text file formats.

Node identity is the index ``0..n-1``. Unique identifiers are modeled as the
identity coloring with palette ``n``; algorithms only ever consume colors.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .errors import GraphFormatError, ParameterError, StructuralError

GRAPH_KINDS = ("ring", "complete", "star", "random_bounded_degree")


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph with a declared degree bound ``delta``."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    delta: int

    def __post_init__(self):
        if self.n < 1:
            raise StructuralError("graph needs at least one node")
        if self.delta < 1:
            raise StructuralError("delta must be >= 1")
        if len(self.adjacency) != self.n:
            raise StructuralError("adjacency length differs from n")
        for v, nbrs in enumerate(self.adjacency):
            if len(nbrs) > self.delta:
                raise StructuralError(f"node {v} has degree {len(nbrs)} > delta={self.delta}")
            prev = -1
            for u in nbrs:
                if u == v:
                    raise StructuralError(f"self-loop at node {v}")
                if not 0 <= u < self.n:
                    raise StructuralError(f"neighbor {u} of node {v} out of range")
                if u <= prev:
                    raise StructuralError(f"adjacency of node {v} not sorted/unique")
                prev = u
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if v not in self._neighbor_sets[u]:
                    raise StructuralError(f"edge {v}-{u} not symmetric")

    @property
    def _neighbor_sets(self) -> tuple[frozenset, ...]:
        try:
            return self.__dict__["_nsets"]
        except KeyError:
            sets = tuple(frozenset(a) for a in self.adjacency)
            object.__setattr__(self, "_nsets", sets)
            return sets

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], delta: int | None = None) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise StructuralError(f"self-loop at node {u}")
            adj[u].add(v)
            adj[v].add(u)
        if delta is None:
            delta = max(1, max((len(a) for a in adj), default=0))
        return cls(n, tuple(tuple(sorted(a)) for a in adj), delta)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._neighbor_sets[u]

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def subgraph_by_class(self, classes: Sequence[int]) -> "Graph":
        """Same node set, keeping only edges whose endpoints share a class."""
        adj = tuple(
            tuple(u for u in nbrs if classes[u] == classes[v])
            for v, nbrs in enumerate(self.adjacency)
        )
        return Graph(self.n, adj, self.delta)


@dataclass(frozen=True)
class Coloring:
    palette_size: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.palette_size < 1:
            raise StructuralError("palette_size must be positive")
        for v, c in enumerate(self.colors):
            if not 0 <= c < self.palette_size:
                raise StructuralError(f"color {c} of node {v} outside [0, {self.palette_size})")

    @classmethod
    def of(cls, colors: Iterable[int], palette_size: int | None = None) -> "Coloring":
        colors = tuple(int(c) for c in colors)
        if palette_size is None:
            palette_size = max(colors, default=0) + 1
        return cls(palette_size, colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def __len__(self) -> int:
        return len(self.colors)

    def distinct(self) -> int:
        return len(set(self.colors))

    def is_proper(self, g: Graph) -> bool:
        c = self.colors
        return all(c[u] != c[v] for u, v in g.edges())


@dataclass(frozen=True)
class Orientation:
    """Directed versions of some graph edges; ``(u, v)`` means u -> v."""

    directed_edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        for u, v in self.directed_edges:
            if (v, u) in self.directed_edges:
                raise StructuralError(f"edge {u}-{v} oriented both ways")

    def outdegrees(self, n: int) -> list[int]:
        out = [0] * n
        for u, _ in self.directed_edges:
            out[u] += 1
        return out


@dataclass(frozen=True)
class Partition:
    """Assignment of every node to one of the parts ``1..part_count``."""

    part_count: int
    part_index: tuple[int, ...]

    def __post_init__(self):
        for v, j in enumerate(self.part_index):
            if not 1 <= j <= self.part_count:
                raise StructuralError(f"node {v} in part {j} outside [1, {self.part_count}]")


def generate(kind: str, n: int, delta: int, seed: int = 0) -> Graph:
    """Build a graph instance. Deterministic for fixed arguments.

    ``random_bounded_degree`` draws ``n * delta`` node pairs uniformly with a
    ``random.Random(seed)`` Mersenne Twister and keeps, in draw order, every new
    pair whose endpoints both still have degree below ``delta``.
    """
    if n < 1 or delta < 1:
        raise ParameterError("need n >= 1 and delta >= 1")
    if kind == "ring":
        if n < 3 or delta < 2:
            raise ParameterError("ring needs n >= 3 and delta >= 2")
        return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)], delta)
    if kind == "complete":
        if delta < n - 1:
            raise ParameterError(f"complete graph on {n} nodes needs delta >= {n - 1}")
        return Graph.from_edges(n, combinations(range(n), 2), delta)
    if kind == "star":
        if delta < n - 1:
            raise ParameterError(f"star on {n} nodes needs delta >= {n - 1}")
        return Graph.from_edges(n, [(0, v) for v in range(1, n)], delta)
    if kind == "random_bounded_degree":
        rng = random.Random(seed)
        deg = [0] * n
        seen: set[tuple[int, int]] = set()
        edges = []
        if n >= 2:
            for _ in range(n * delta):
                u, v = rng.randrange(n), rng.randrange(n)
                if u == v:
                    continue
                e = (u, v) if u < v else (v, u)
                if e in seen or deg[u] >= delta or deg[v] >= delta:
                    continue
                seen.add(e)
                deg[u] += 1
                deg[v] += 1
                edges.append(e)
        return Graph.from_edges(n, edges, delta)
    raise ParameterError(f"unknown graph kind {kind!r}; expected one of {GRAPH_KINDS}")


def path_graph(n: int, delta: int = 2) -> Graph:
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)], delta)


def greedy_input_coloring(g: Graph, identity: bool = False) -> Coloring:
    """Sequential greedy coloring in index order (palette <= delta + 1).

    With ``identity=True`` returns color(v) = v over palette n, i.e. IDs as colors.
    """
    if identity:
        return Coloring(g.n, tuple(range(g.n)))
    colors = [-1] * g.n
    for v in range(g.n):
        used = {colors[u] for u in g.adjacency[v]}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return Coloring(max(colors) + 1, tuple(colors))


# ---------------------------------------------------------------- file formats

def dumps_graph(g: Graph) -> str:
    lines = [f"graph {g.n} {g.edge_count} {g.delta}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def loads_graph(text: str) -> Graph:
    lines = text.splitlines()
    if not lines:
        raise GraphFormatError("empty file", 1)
    head = lines[0].split()
    if len(head) != 4 or head[0] != "graph":
        raise GraphFormatError("expected header 'graph <n> <edge_count> <delta>'", 1)
    try:
        n, m_edges, delta = (int(x) for x in head[1:])
    except ValueError:
        raise GraphFormatError("non-integer header field", 1) from None
    if n < 1 or delta < 1 or m_edges < 0:
        raise GraphFormatError("header values out of range", 1)
    adj: list[set[int]] = [set() for _ in range(n)]
    count = 0
    for lineno, raw in enumerate(lines[1:], start=2):
        parts = raw.split()
        if not parts:
            continue
        if len(parts) != 3 or parts[0] != "e":
            raise GraphFormatError(f"expected 'e <u> <v>', got {raw!r}", lineno)
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise GraphFormatError("non-integer endpoint", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"endpoint out of range [0, {n})", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at node {u}", lineno)
        if u > v:
            raise GraphFormatError("edge endpoints must satisfy u < v", lineno)
        if v in adj[u]:
            raise GraphFormatError(f"duplicate edge {u}-{v}", lineno)
        adj[u].add(v)
        adj[v].add(u)
        for w in (u, v):
            if len(adj[w]) > delta:
                raise GraphFormatError(f"node {w} exceeds declared delta={delta}", lineno)
        count += 1
    if count != m_edges:
        raise GraphFormatError(f"header declares {m_edges} edges, found {count}", 1)
    return Graph(n, tuple(tuple(sorted(a)) for a in adj), delta)


def save(g: Graph, path) -> None:
    Path(path).write_text(dumps_graph(g))


def load(path) -> Graph:
    return loads_graph(Path(path).read_text())


def dumps_coloring(c: Coloring) -> str:
    return "\n".join([f"coloring {len(c)} {c.palette_size}", *map(str, c.colors)]) + "\n"


def loads_coloring(text: str) -> Coloring:
    lines = [ln for ln in text.splitlines()]
    if not lines:
        raise GraphFormatError("empty file", 1)
    head = lines[0].split()
    if len(head) != 3 or head[0] != "coloring":
        raise GraphFormatError("expected header 'coloring <n> <m>'", 1)
    try:
        n, m = int(head[1]), int(head[2])
    except ValueError:
        raise GraphFormatError("non-integer header field", 1) from None
    colors = []
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        try:
            c = int(raw)
        except ValueError:
            raise GraphFormatError(f"not an integer: {raw!r}", lineno) from None
        if not 0 <= c < m:
            raise GraphFormatError(f"color {c} outside [0, {m})", lineno)
        colors.append(c)
    if len(colors) != n:
        raise GraphFormatError(f"header declares {n} nodes, found {len(colors)}", 1)
    return Coloring(m, tuple(colors))


def save_coloring(c: Coloring, path) -> None:
    Path(path).write_text(dumps_coloring(c))


def load_coloring(path) -> Coloring:
    return loads_coloring(Path(path).read_text())
