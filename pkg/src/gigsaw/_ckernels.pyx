# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the loops in ``_pykernels``; same signatures and output."""

from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_clzll(unsigned long long)


cdef void _grow(u64 members, int size, u64 ext, u64 closed, int low, int cap,
                u64* nbr, list out):
    cdef int w
    cdef u64 fresh, lowmask
    out.append(members)
    if size == cap:
        return
    lowmask = (<u64>2 << low) - 1
    while ext:
        w = 63 - __builtin_clzll(ext)
        ext &= ~((<u64>1) << w)
        fresh = nbr[w] & ~closed & ~lowmask
        _grow(members | ((<u64>1) << w), size + 1, ext | fresh, closed | nbr[w], low, cap, nbr, out)


def connected_subsets(adj, int cap):
    cdef int n = len(adj)
    if n > 64:
        from ._pykernels import connected_subsets as slow
        return slow(adj, cap)
    cdef u64* nbr = <u64*>malloc(max(n, 1) * sizeof(u64))
    cdef int v
    cdef u64 ext
    cdef list out = []
    try:
        for v in range(n):
            nbr[v] = 0
            for w in adj[v]:
                nbr[v] |= (<u64>1) << <int>w
        if cap >= 1:
            for v in range(n):
                ext = nbr[v] & ~((<u64>2 << v) - 1)
                _grow((<u64>1) << v, 1, ext, nbr[v] | ((<u64>1) << v), v, cap, nbr, out)
    finally:
        free(nbr)
    sets = [tuple(i for i in range(n) if (<u64>m) >> i & 1) for m in out]
    sets.sort(key=lambda s: (len(s), s))
    return sets


cdef class _Search:
    cdef int width, count
    cdef int* cands
    cdef int* firsts
    cdef set failed
    cdef list chosen

    def __cinit__(self, list cands, int width):
        cdef int j, i
        self.count = len(cands)
        self.width = width
        self.cands = <int*>malloc(max(self.count * self.width, 1) * sizeof(int))
        self.firsts = <int*>malloc(max(self.count, 1) * sizeof(int))
        for j in range(self.count):
            self.firsts[j] = -1
            for i in range(self.width):
                self.cands[j * self.width + i] = cands[j][i]
                if self.firsts[j] < 0 and cands[j][i]:
                    self.firsts[j] = i
        self.failed = set()
        self.chosen = []

    def __dealloc__(self):
        free(self.cands)
        free(self.firsts)

    cdef bint dfs(self, int* rem) except -1:
        cdef int i = 0, j, k
        cdef int* c
        cdef bint fits
        while i < self.width and rem[i] == 0:
            i += 1
        if i == self.width:
            return True
        key = bytes((<char*>rem)[:self.width * sizeof(int)])
        if key in self.failed:
            return False
        for j in range(self.count):
            if self.firsts[j] != i:
                continue
            c = self.cands + j * self.width
            fits = True
            for k in range(i, self.width):
                if c[k] > rem[k]:
                    fits = False
                    break
            if not fits:
                continue
            for k in range(i, self.width):
                rem[k] -= c[k]
            self.chosen.append(j)
            if self.dfs(rem):
                return True
            self.chosen.pop()
            for k in range(i, self.width):
                rem[k] += c[k]
        self.failed.add(key)
        return False


def summand_search(target, cands, ids):
    keep = [j for j, c in enumerate(cands) if any(c)]
    cands = [tuple(cands[j]) for j in keep]
    ids = [ids[j] for j in keep]
    if not any(target):
        return None
    cdef int width = len(target)
    cdef int* rem = <int*>malloc(width * sizeof(int))
    cdef int i
    try:
        for i in range(width):
            rem[i] = target[i]
        search = _Search(cands, width)
        if not search.dfs(rem):
            return None
        out = {}
        for j in search.chosen:
            out[ids[j]] = out.get(ids[j], 0) + 1
        return dict(sorted(out.items()))
    finally:
        free(rem)
