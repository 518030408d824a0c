"""Pure-Python kernels; the fallback when the compiled module is unavailable.

Same signatures and results as ``_ckernels``.
"""
import itertools

import numpy as np


def eval_sequences(coeffs, q):
    """Evaluate each coefficient row (lowest degree first) at x = 0..q-1 mod q."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    rows, width = coeffs.shape
    out = np.empty((rows, q), dtype=np.int64)
    for r in range(rows):
        row = [int(a) for a in coeffs[r]]
        vals = out[r]
        for x in range(q):
            acc = 0
            for i in range(width - 1, -1, -1):
                acc = (acc * x + row[i]) % q
            vals[x] = acc
    return out


def pick_tuple(table, own_row, nbr_rows, x0, length, perm_first, perm_second, d):
    """Smallest in-batch offset whose tuple has at most ``d`` conflicts, else -1.

    A conflict is an active neighbor trying the same tuple (same offset, same
    value) or a permanently colored neighbor holding it.
    """
    own = table[own_row, x0 : x0 + length]
    counts = np.zeros(length, dtype=np.int64)
    if len(nbr_rows):
        counts += (table[np.asarray(nbr_rows), x0 : x0 + length] == own).sum(axis=0)
    for a, b in zip(perm_first, perm_second):
        if a < length and own[a] == b:
            counts[a] += 1
    ok = np.flatnonzero(counts <= d)
    return int(ok[0]) if ok.size else -1


# ------------------------------------------------------------------ mask search
#
# A q-output one-round algorithm for palette m and degree bound D exists iff
# there are masks M[c][a] (subsets of [q]) with M[a][c] the complement of
# M[c][a] such that, for every row c, any min(D, m-1) entries of the row
# intersect. Bit x of M[c][a] says "c beats a in tournament x"; a vertex is a
# king of tournament x when it beats everybody there, so each tournament has
# at most one king. The search splits on the number h of tournaments with a
# king (by symmetry, tournaments 0..h-1 have the last h vertices as kings), then
# fills rows in order; symmetric rows and output colors are pruned with a
# lex-leader test.


class BudgetHit(Exception):
    pass


def _bits(b):
    while b:
        low = b & -b
        yield low.bit_length() - 1
        b ^= low


def _mask_perm_images(classes, q, nm):
    """Image tables of every non-identity permutation acting within ``classes``."""
    ident = list(range(q))
    out = []
    for combo in itertools.product(*[itertools.permutations(cl) for cl in classes]):
        pm = list(ident)
        for cl, pcl in zip(classes, combo):
            for x, y in zip(cl, pcl):
                pm[x] = y
        if pm == ident:
            continue
        img = [0] * nm
        for x in range(nm):
            y = 0
            for i in range(q):
                if x >> i & 1:
                    y |= 1 << pm[i]
            img[x] = y
        out.append(img)
    return out


def king_cases(m, q):
    """Case order for the king split: most kings first, so satisfiable instances end early."""
    return list(range(min(m, q), -1, -1))


def _mask_case(L, m, q, h, budget):
    full = (1 << q) - 1
    nm = 1 << q
    allv = (1 << nm) - 1
    hit = [sum(1 << x for x in range(nm) if x & b) for b in range(nm)]
    sup = [sum(1 << x for x in range(nm) if x & b == b) for b in range(nm)]
    # vertex m-h+x is the king of tournament x; kings go last so that the
    # constrained non-king rows are filled first
    kb = [1 << (c - m + h) if c >= m - h else 0 for c in range(m)]
    D = [[allv] * m for _ in range(m)]
    for c in range(m):
        for a in range(m):
            if kb[c]:
                D[c][a] &= sup[kb[c]]
            if kb[a]:
                D[c][a] &= allv ^ hit[kb[a]]
    rev = {}

    def revc(b):
        r = rev.get(b)
        if r is None:
            r = 0
            for x in _bits(b):
                r |= 1 << (full ^ x)
            rev[b] = r
        return r

    M = [[-1] * m for _ in range(m)]
    # S[r][l]: intersections of at most l assigned entries of row r
    S = [[1 << full] * L for _ in range(m)]
    allowed = [hit[full]] * m
    inter = [full] * m
    rem = [m - 1] * m
    expansions = 0

    def domain(c, a):
        dom = allowed[c] & revc(allowed[a]) & D[c][a]
        if rem[c] == 1:
            # last entry of row c: the row may only share its own king bit
            dom &= allv ^ hit[inter[c] & ~kb[c]]
        if rem[a] == 1:
            dom &= sup[inter[a] & ~kb[a]]
        return dom

    def add(r, x):
        s = S[r]
        new = list(s)
        for l in range(L - 1, 0, -1):
            acc = 0
            for b in _bits(s[l - 1]):
                acc |= 1 << (b & x)
            new[l] |= acc
        a = allowed[r]
        for b in _bits(new[L - 1] & ~s[L - 1]):
            a &= hit[b]
        return new, a

    def role(v):
        return kb[v].bit_length() - 1

    def row(c):
        nonlocal expansions
        if c >= m - 1:
            return True
        groups = {}
        for a in range(c + 1, m):
            groups.setdefault((role(a),) + tuple(M[b][a] for b in range(c)), []).append(a)
        vclasses = list(groups.values())
        order = [a for cl in vclasses for a in cl]
        starts, ends = set(), set()
        bounds = []
        pos = 0
        for cl in vclasses:
            starts.add(pos)
            bounds.append((pos, pos + len(cl)))
            pos += len(cl)
            ends.add(pos)
        sig = {}
        for x in range(q):
            key = (x if x < h else -1,) + tuple(M[b][a] >> x & 1 for b in range(c) for a in range(b + 1, m))
            sig.setdefault(key, []).append(x)
        perms = _mask_perm_images(list(sig.values()), q, nm)

        def canonical(upto):
            vec = [M[c][a] for a in order[:upto]]
            for img in perms:
                out = []
                for lo, hi in bounds:
                    if hi > upto:
                        break
                    out.extend(sorted(img[v] for v in vec[lo:hi]))
                if out < vec:
                    return False
            return True

        def dfs(i):
            nonlocal expansions
            if i == len(order):
                return row(c + 1)
            a = order[i]
            cand = domain(c, a)
            if i not in starts:
                cand &= ~((1 << M[c][order[i - 1]]) - 1)
            for x in _bits(cand):
                expansions += 1
                if expansions > budget:
                    raise BudgetHit
                saved = S[c], allowed[c], S[a], allowed[a], inter[c], inter[a]
                S[c], allowed[c] = add(c, x)
                S[a], allowed[a] = add(a, full ^ x)
                inter[c] &= x
                inter[a] &= full ^ x
                rem[c] -= 1
                rem[a] -= 1
                M[c][a] = x
                M[a][c] = full ^ x
                ok = all(domain(c, b) for b in order[i + 1:])
                if ok:
                    for r in range(c + 1, m):
                        if r != a and M[r][a] < 0:
                            lo, hi = (a, r) if a < r else (r, a)
                            if not domain(lo, hi):
                                ok = False
                                break
                if ok and (i + 1) in ends and perms and not canonical(i + 1):
                    ok = False
                if ok and dfs(i + 1):
                    return True
                M[c][a] = M[a][c] = -1
                rem[c] += 1
                rem[a] += 1
                S[c], allowed[c], S[a], allowed[a], inter[c], inter[a] = saved
            return False

        return dfs(0)

    try:
        found = row(0)
    except BudgetHit:
        return -1, None, expansions
    return (1 if found else 0), ([list(r) for r in M] if found else None), expansions


def mask_search(delta, m, q, budget):
    """Return ``(status, masks, expansions)``; status 1 sat, 0 unsat, -1 budget hit."""
    L = min(delta, m - 1)
    if m <= 1 or L <= 0:
        return 1, [[-1] * m for _ in range(m)], 0
    total = 0
    for h in king_cases(m, q):
        status, masks, used = _mask_case(L, m, q, h, budget - total)
        total += used
        if status != 0:
            return status, masks, total
    return 0, None, total


# ------------------------------------------------------------ DSATUR search


def dsatur_search(n, offsets, targets, q, budget, clique):
    """Decide q-colorability by DSATUR branch and bound.

    ``offsets``/``targets`` is the CSR adjacency; ``clique`` is a clique whose
    members are fixed to colors ``0..len(clique)-1`` first. Returns
    ``(status, colors, expansions)`` like :func:`mask_search`.
    """
    if len(clique) > q:
        return 0, None, 0
    adj = [list(targets[offsets[v] : offsets[v + 1]]) for v in range(n)]
    color = [-1] * n
    cnt = [[0] * q for _ in range(n)]
    sat = [0] * n
    udeg = [len(a) for a in adj]

    def assign(v, c):
        color[v] = c
        for u in adj[v]:
            udeg[u] -= 1
            if cnt[u][c] == 0:
                sat[u] += 1
            cnt[u][c] += 1

    def unassign(v, c):
        color[v] = -1
        for u in adj[v]:
            udeg[u] += 1
            cnt[u][c] -= 1
            if cnt[u][c] == 0:
                sat[u] -= 1

    for i, v in enumerate(clique):
        assign(v, i)
    for v in range(n):
        if color[v] < 0 and sat[v] >= q:
            return 0, None, 0
    expansions = 0

    def pick():
        best, key = -1, None
        for v in range(n):
            if color[v] < 0:
                k = (sat[v], udeg[v])
                if key is None or k > key:
                    best, key = v, k
        return best

    def rec(used, left):
        nonlocal expansions
        if left == 0:
            return True
        v = pick()
        top = min(q, used + 1)
        for c in range(top):
            if cnt[v][c]:
                continue
            expansions += 1
            if expansions > budget:
                raise BudgetHit
            assign(v, c)
            dead = any(color[u] < 0 and sat[u] >= q for u in adj[v])
            if not dead and rec(max(used, c + 1), left - 1):
                return True
            unassign(v, c)
        return False

    try:
        ok = rec(len(clique), n - len(clique))
    except BudgetHit:
        return -1, None, expansions
    return (1, list(color), expansions) if ok else (0, None, expansions)
