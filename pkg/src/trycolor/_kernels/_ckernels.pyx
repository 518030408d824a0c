# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same signatures and results as ``_pykernels``."""
import itertools

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

from . import _pykernels

cnp.import_array()

ctypedef uint64_t u64


def eval_sequences(coeffs, long q):
    cdef int64_t[:, :] c = np.ascontiguousarray(coeffs, dtype=np.int64)
    cdef Py_ssize_t rows = c.shape[0], w = c.shape[1], r, x, i
    out = np.empty((rows, q), dtype=np.int64)
    cdef int64_t[:, :] o = out
    cdef int64_t acc
    for r in range(rows):
        for x in range(q):
            acc = 0
            for i in range(w - 1, -1, -1):
                acc = (acc * x + c[r, i]) % q
            o[r, x] = acc
    return out


def pick_tuple(table, long own_row, nbr_rows, long x0, long length, perm_first, perm_second, long d):
    cdef int64_t[:, :] t = table
    cdef int64_t[:] nb = np.ascontiguousarray(nbr_rows, dtype=np.int64)
    cdef int64_t[:] pa = np.ascontiguousarray(perm_first, dtype=np.int64)
    cdef int64_t[:] pb = np.ascontiguousarray(perm_second, dtype=np.int64)
    cdef Py_ssize_t l, j
    cdef long cnt, a
    for l in range(length):
        cnt = 0
        for j in range(nb.shape[0]):
            if t[nb[j], x0 + l] == t[own_row, x0 + l]:
                cnt += 1
        for j in range(pa.shape[0]):
            a = pa[j]
            if a == l and pb[j] == t[own_row, x0 + l]:
                cnt += 1
        if cnt <= d:
            return l
    return -1


# ------------------------------------------------------------------ mask search

cdef extern from *:
    int __builtin_ctzll(unsigned long long)


cdef inline int lowbit(u64 b):
    return __builtin_ctzll(b)


cdef class _MaskSolver:
    cdef int m, q, L, full, nm, h
    cdef long long budget, expansions
    cdef int[:, :] M
    cdef u64[:, :] S
    cdef u64[:] allowed
    cdef u64[:] hit
    cdef u64[:] sup
    cdef u64[:, :] D
    cdef int[:] kb
    cdef int[:] inter
    cdef int[:] rem
    cdef u64 allv

    def __init__(self, int L, int m, int q, int kings, long long budget):
        self.m = m
        self.q = q
        self.h = kings
        self.L = L
        self.full = (1 << q) - 1
        self.nm = 1 << q
        self.budget = budget
        self.expansions = 0
        self.M = np.full((m, m), -1, dtype=np.int32)
        self.S = np.full((m, self.L), (<u64> 1) << self.full, dtype=np.uint64)
        hit = np.zeros(self.nm, dtype=np.uint64)
        cdef int h, x
        cdef u64[:] hv = hit
        for h in range(self.nm):
            for x in range(self.nm):
                if x & h:
                    hv[h] |= (<u64> 1) << x
        self.hit = hit
        self.allowed = np.full(m, hv[self.full], dtype=np.uint64)
        self.allv = ~(<u64> 0) if self.nm == 64 else ((<u64> 1) << self.nm) - 1
        sup = np.zeros(self.nm, dtype=np.uint64)
        cdef u64[:] sv = sup
        for h in range(self.nm):
            for x in range(self.nm):
                if x & h == h:
                    sv[h] |= (<u64> 1) << x
        self.sup = sup
        kb = np.zeros(m, dtype=np.int32)
        for x in range(self.h):
            kb[m - self.h + x] = 1 << x
        self.kb = kb
        D = np.full((m, m), self.allv, dtype=np.uint64)
        cdef u64[:, :] dv = D
        cdef int[:] kv = kb
        cdef int c, a
        for c in range(m):
            for a in range(m):
                if kv[c]:
                    dv[c, a] &= sv[kv[c]]
                if kv[a]:
                    dv[c, a] &= self.allv ^ hv[kv[a]]
        self.D = D
        self.inter = np.full(m, self.full, dtype=np.int32)
        self.rem = np.full(m, m - 1, dtype=np.int32)

    cdef inline u64 revc(self, u64 b):
        cdef u64 r = 0
        while b:
            r |= (<u64> 1) << (self.full ^ lowbit(b))
            b &= b - 1
        return r

    cdef inline u64 domain(self, int c, int a):
        cdef u64 dom = self.allowed[c] & self.revc(self.allowed[a]) & self.D[c, a]
        if self.rem[c] == 1:
            dom &= self.allv ^ self.hit[self.inter[c] & ~self.kb[c]]
        if self.rem[a] == 1:
            dom &= self.sup[self.inter[a] & ~self.kb[a]]
        return dom

    cdef void add(self, int r, int x):
        cdef int l
        cdef u64 src, acc, fresh
        cdef u64 old_top = self.S[r, self.L - 1]
        for l in range(self.L - 1, 0, -1):
            src = self.S[r, l - 1]
            acc = 0
            while src:
                acc |= (<u64> 1) << (lowbit(src) & x)
                src &= src - 1
            self.S[r, l] |= acc
        fresh = self.S[r, self.L - 1] & ~old_top
        while fresh:
            self.allowed[r] &= self.hit[lowbit(fresh)]
            fresh &= fresh - 1

    def row_setup(self, int c):
        m, q, nm = self.m, self.q, self.nm
        M = self.M
        kb = self.kb
        groups = {}
        for a in range(c + 1, m):
            groups.setdefault((kb[a],) + tuple(M[b, a] for b in range(c)), []).append(a)
        order = [a for cl in groups.values() for a in cl]
        start = np.zeros(len(order) + 1, dtype=np.int32)
        end = np.zeros(len(order) + 1, dtype=np.int32)
        pos = 0
        for cl in groups.values():
            start[pos] = 1
            pos += len(cl)
            end[pos] = 1
        sig = {}
        for x in range(q):
            key = (x if x < self.h else -1,) + tuple((M[b, a] >> x) & 1 for b in range(c) for a in range(b + 1, m))
            sig.setdefault(key, []).append(x)
        imgs = _pykernels._mask_perm_images(list(sig.values()), q, nm)
        perms = np.asarray(imgs, dtype=np.int32).reshape(len(imgs), nm)
        return np.asarray(order, dtype=np.int32), start, end, perms

    cdef bint canonical(self, int c, int[:] order, int[:] start, int upto, int[:, :] perms):
        cdef int p, i, j, lo, v, t
        cdef int buf[64]
        cdef int diff
        for p in range(perms.shape[0]):
            for i in range(upto):
                buf[i] = perms[p, self.M[c, order[i]]]
            # sort within each class block
            lo = 0
            for i in range(1, upto + 1):
                if i == upto or start[i]:
                    for j in range(lo + 1, i):
                        v = buf[j]
                        t = j - 1
                        while t >= lo and buf[t] > v:
                            buf[t + 1] = buf[t]
                            t -= 1
                        buf[t + 1] = v
                    lo = i
            diff = 0
            for i in range(upto):
                v = self.M[c, order[i]]
                if buf[i] != v:
                    diff = -1 if buf[i] < v else 1
                    break
            if diff < 0:
                return False
        return True

    cdef int row(self, int c) except -2:
        if c >= self.m - 1:
            return 1
        order, start, end, perms = self.row_setup(c)
        return self.dfs(c, 0, order, start, end, perms)

    cdef int dfs(self, int c, int i, int[:] order, int[:] start, int[:] end,
                 int[:, :] perms) except -2:
        cdef int n = order.shape[0]
        if i == n:
            return self.row(c + 1)
        cdef int a = order[i], x, b, r, lo, hi, res, l
        cdef u64 cand = self.domain(c, a)
        if not start[i]:
            cand &= ~(((<u64> 1) << self.M[c, order[i - 1]]) - 1)
        cdef u64 sc[8]
        cdef u64 sa[8]
        cdef u64 ac, aa
        cdef int ic, ia
        cdef bint ok
        while cand:
            x = lowbit(cand)
            cand &= cand - 1
            self.expansions += 1
            if self.expansions > self.budget:
                return -1
            for l in range(self.L):
                sc[l] = self.S[c, l]
                sa[l] = self.S[a, l]
            ac = self.allowed[c]
            aa = self.allowed[a]
            ic = self.inter[c]
            ia = self.inter[a]
            self.add(c, x)
            self.add(a, self.full ^ x)
            self.inter[c] = ic & x
            self.inter[a] = ia & (self.full ^ x)
            self.rem[c] -= 1
            self.rem[a] -= 1
            self.M[c, a] = x
            self.M[a, c] = self.full ^ x
            ok = True
            for b in range(i + 1, n):
                if not self.domain(c, order[b]):
                    ok = False
                    break
            if ok:
                for r in range(c + 1, self.m):
                    if r != a and self.M[r, a] < 0:
                        lo, hi = (a, r) if a < r else (r, a)
                        if not self.domain(lo, hi):
                            ok = False
                            break
            if ok and end[i + 1] and perms.shape[0] and not self.canonical(c, order, start, i + 1, perms):
                ok = False
            if ok:
                res = self.dfs(c, i + 1, order, start, end, perms)
                if res != 0:
                    return res
            self.M[c, a] = -1
            self.M[a, c] = -1
            for l in range(self.L):
                self.S[c, l] = sc[l]
                self.S[a, l] = sa[l]
            self.allowed[c] = ac
            self.allowed[a] = aa
            self.inter[c] = ic
            self.inter[a] = ia
            self.rem[c] += 1
            self.rem[a] += 1
        return 0


def mask_search(delta, m, q, budget):
    L = min(delta, m - 1)
    if m <= 1 or L <= 0:
        return 1, [[-1] * m for _ in range(m)], 0
    if q > 6 or L > 8 or m > 64:
        return _pykernels.mask_search(delta, m, q, budget)
    total = 0
    for h in _pykernels.king_cases(m, q):
        s = _MaskSolver(L, m, q, h, budget - total)
        res = s.row(0)
        total += s.expansions
        if res < 0:
            return -1, None, total
        if res == 1:
            return 1, np.asarray(s.M).tolist(), total
    return 0, None, total


# ------------------------------------------------------------ DSATUR search

cdef class _Dsatur:
    cdef int n, q
    cdef long long budget, expansions
    cdef int64_t[:] off
    cdef int64_t[:] tgt
    cdef int[:] color
    cdef int[:, :] cnt
    cdef int[:] sat
    cdef int[:] udeg

    def __init__(self, int n, offsets, targets, int q, long long budget):
        self.n = n
        self.q = q
        self.budget = budget
        self.expansions = 0
        self.off = np.ascontiguousarray(offsets, dtype=np.int64)
        self.tgt = np.ascontiguousarray(targets, dtype=np.int64)
        self.color = np.full(n, -1, dtype=np.int32)
        self.cnt = np.zeros((n, max(q, 1)), dtype=np.int32)
        self.sat = np.zeros(n, dtype=np.int32)
        self.udeg = np.asarray(np.diff(self.off), dtype=np.int32)

    cdef void assign(self, int v, int c):
        cdef Py_ssize_t e
        cdef int u
        self.color[v] = c
        for e in range(self.off[v], self.off[v + 1]):
            u = <int> self.tgt[e]
            self.udeg[u] -= 1
            if self.cnt[u, c] == 0:
                self.sat[u] += 1
            self.cnt[u, c] += 1

    cdef void unassign(self, int v, int c):
        cdef Py_ssize_t e
        cdef int u
        self.color[v] = -1
        for e in range(self.off[v], self.off[v + 1]):
            u = <int> self.tgt[e]
            self.udeg[u] += 1
            self.cnt[u, c] -= 1
            if self.cnt[u, c] == 0:
                self.sat[u] -= 1

    cdef int pick(self):
        cdef int v, best = -1, bs = -1, bd = -1
        for v in range(self.n):
            if self.color[v] < 0:
                if self.sat[v] > bs or (self.sat[v] == bs and self.udeg[v] > bd):
                    best, bs, bd = v, self.sat[v], self.udeg[v]
        return best

    cdef int rec(self, int used, int left):
        if left == 0:
            return 1
        cdef int v = self.pick(), c, top = min(self.q, used + 1), u, res
        cdef Py_ssize_t e
        cdef bint dead
        for c in range(top):
            if self.cnt[v, c]:
                continue
            self.expansions += 1
            if self.expansions > self.budget:
                return -1
            self.assign(v, c)
            dead = False
            for e in range(self.off[v], self.off[v + 1]):
                u = <int> self.tgt[e]
                if self.color[u] < 0 and self.sat[u] >= self.q:
                    dead = True
                    break
            if not dead:
                res = self.rec(max(used, c + 1), left - 1)
                if res != 0:
                    return res
            self.unassign(v, c)
        return 0


def dsatur_search(n, offsets, targets, q, budget, clique):
    if len(clique) > q:
        return 0, None, 0
    s = _Dsatur(n, offsets, targets, q, budget)
    for i, v in enumerate(clique):
        s.assign(v, i)
    for v in range(n):
        if s.color[v] < 0 and s.sat[v] >= q:
            return 0, None, 0
    res = s.rec(len(clique), n - len(clique))
    if res < 0:
        return -1, None, s.expansions
    if res == 0:
        return 0, None, s.expansions
    return 1, np.asarray(s.color).tolist(), s.expansions
