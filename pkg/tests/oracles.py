"""Independent reference computations used to cross-check the package.

Nothing here imports trycolor internals; every value is recomputed from the
definitions with plain loops, sympy or networkx.
"""
from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

import networkx as nx
import sympy


def f_oracle(m: int, delta: int, d: int) -> int:
    """Smallest f >= 1 with (delta/(d+1))^f >= m, by repeated multiplication."""
    base = Fraction(delta, d + 1)
    f, p = 1, base
    while p < m:
        p *= base
        f += 1
    return f


def q_oracle(f: int, delta: int, d: int) -> int:
    """Smallest prime strictly above 2*f*delta/(d+1), via sympy."""
    bound = Fraction(2 * f * delta, d + 1)
    return int(sympy.nextprime(math.floor(bound)))


def poly_eval(coeffs, x: int, q: int) -> int:
    return sum(c * pow(x, i, q) for i, c in enumerate(coeffs)) % q


def intersections(c1, c2, q: int) -> int:
    return sum(poly_eval(c1, x, q) == poly_eval(c2, x, q) for x in range(q))


def degree(coeffs) -> int:
    nz = [i for i, c in enumerate(coeffs) if c]
    return nz[-1] if nz else 0


def to_nx(g) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def is_proper(g, colors) -> bool:
    return all(colors[u] != colors[v] for u, v in to_nx(g).edges())


def max_same_color_degree(g, colors) -> int:
    h = to_nx(g)
    return max((sum(colors[u] == colors[v] for u in h[v]) for v in h), default=0)


def ruling_ok(g, members, r: int) -> bool:
    h = to_nx(g)
    members = set(members)
    if any(u in members and v in members for u, v in h.edges()):
        return False
    if not members:
        return g.n == 0
    dist = nx.multi_source_dijkstra_path_length(h, members)
    return len(dist) == g.n and max(dist.values()) <= r


def config_views(delta: int, m: int):
    """Every (own color, neighbor color set) a node can see."""
    out = []
    for c in range(m):
        others = [a for a in range(m) if a != c]
        for size in range(min(delta, m - 1) + 1):
            for s in combinations(others, size):
                out.append((c, frozenset(s)))
    return out


def views_compatible(u, v) -> bool:
    (c1, s1), (c2, s2) = u, v
    return c1 != c2 and c2 in s1 and c1 in s2


def brute_colorable(delta: int, m: int, q: int) -> bool:
    """Plain backtracking over the view graph, most constrained vertex first."""
    views = config_views(delta, m)
    n = len(views)
    adj = [[j for j in range(n) if j != i and views_compatible(views[i], views[j])] for i in range(n)]
    col = [-1] * n

    def rec(left):
        if not left:
            return True
        v = max(left, key=lambda x: (len({col[u] for u in adj[x] if col[u] >= 0}), len(adj[x])))
        used = {col[u] for u in adj[v] if col[u] >= 0}
        rest = left - {v}
        for c in range(q):
            if c not in used:
                col[v] = c
                if rec(rest):
                    return True
        col[v] = -1
        return False

    return rec(set(range(n)))
