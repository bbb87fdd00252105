# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: brute-force avoidance counting and the 123 scheme.

Mirrors ``_pykernels`` function for function.
"""
from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t

from .errors import CapacityError

MAX_GROUND = 64
NAME = "cython"


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_clzll(unsigned long long) nogil


cdef bint _dfs(const int* pblk, const int* pval, int npts, const int* rho, int m,
               int j, int start, int prev, int* chosen) noexcept nogil:
    cdef int i, x, v, c
    cdef bint ok
    if j == m:
        return True
    for i in range(start, npts - (m - j) + 1):
        if pblk[i] <= prev:
            continue
        v = pval[i]
        ok = True
        for x in range(j):
            c = chosen[x]
            if c == v or ((c < v) != (rho[x] < rho[j])):
                ok = False
                break
        if ok:
            chosen[j] = v
            if _dfs(pblk, pval, npts, rho, m, j + 1, i + 1, pblk[i], chosen):
                return True
    return False


cdef int* _int_array(seq) except NULL:
    cdef Py_ssize_t i, n = len(seq)
    cdef int* out = <int*> malloc((n + 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = seq[i]
    return out


def points_contain(pblk, pval, rho):
    cdef int npts = len(pval), m = len(rho)
    cdef int* b = _int_array(pblk)
    cdef int* v = _int_array(pval)
    cdef int* r = _int_array(rho)
    cdef int* chosen = _int_array([0] * m)
    try:
        return bool(_dfs(b, v, npts, r, m, 0, 0, -1, chosen))
    finally:
        free(b); free(v); free(r); free(chosen)


cdef bint _next_multiset_perm(int* a, int n) noexcept nogil:
    cdef int i = n - 2, j, tmp, lo, hi
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while a[j] <= a[i]:
        j -= 1
    tmp = a[i]; a[i] = a[j]; a[j] = tmp
    lo = i + 1
    hi = n - 1
    while lo < hi:
        tmp = a[lo]; a[lo] = a[hi]; a[hi] = tmp
        lo += 1
        hi -= 1
    return True


def count_fixed(sizes, rho):
    """Avoiders of ``rho`` among all partitions of shape ``sizes``."""
    cdef int k = len(sizes), m = len(rho), n = sum(sizes)
    cdef int i, j, x
    cdef unsigned long long count = 0
    if k < m:
        from math import comb
        total, out = 0, 1
        for b in sizes:
            total += b
            out *= comb(total, b)
        return out
    cdef int* a = _int_array([0] * n)
    cdef int* start = _int_array([0] * k)
    cdef int* fill = _int_array([0] * k)
    cdef int* pblk = _int_array([0] * n)
    cdef int* pval = _int_array([0] * n)
    cdef int* r = _int_array(rho)
    cdef int* chosen = _int_array([0] * m)
    try:
        x = 0
        for j in range(k):
            start[j] = x
            for i in range(sizes[j]):
                a[x] = j
                pblk[x] = j
                x += 1
        with nogil:
            while True:
                for j in range(k):
                    fill[j] = start[j]
                for i in range(n):
                    pval[fill[a[i]]] = i + 1
                    fill[a[i]] += 1
                if not _dfs(pblk, pval, n, r, m, 0, 0, -1, chosen):
                    count += 1
                if not _next_multiset_perm(a, n):
                    break
    finally:
        free(a); free(start); free(fill); free(pblk); free(pval); free(r); free(chosen)
    return int(count)


def count_star(n, k, rho):
    """Avoiders of ``rho`` among all ``k**n`` star assignments."""
    cdef int nn = n, kk = k, m = len(rho)
    cdef int i, j, x
    cdef unsigned long long count = 0
    cdef int* a = _int_array([0] * (nn + 1))
    cdef int* cnt = _int_array([0] * kk)
    cdef int* fill = _int_array([0] * kk)
    cdef int* pblk = _int_array([0] * (nn + 1))
    cdef int* pval = _int_array([0] * (nn + 1))
    cdef int* r = _int_array(rho)
    cdef int* chosen = _int_array([0] * m)
    try:
        with nogil:
            while True:
                for j in range(kk):
                    cnt[j] = 0
                for i in range(nn):
                    cnt[a[i]] += 1
                x = 0
                for j in range(kk):
                    fill[j] = x
                    x += cnt[j]
                for i in range(nn):
                    pblk[fill[a[i]]] = a[i]
                    pval[fill[a[i]]] = i + 1
                    fill[a[i]] += 1
                if not _dfs(pblk, pval, nn, r, m, 0, 0, -1, chosen):
                    count += 1
                # odometer, last position fastest
                i = nn - 1
                while i >= 0 and a[i] == kk - 1:
                    a[i] = 0
                    i -= 1
                if i < 0:
                    break
                a[i] += 1
    finally:
        free(a); free(cnt); free(fill); free(pblk); free(pval); free(r); free(chosen)
    return int(count)


def count_words(k, n, rho):
    """Words in ``[k]^n`` avoiding ``rho``."""
    cdef int nn = n, kk = k, m = len(rho)
    cdef int i
    cdef unsigned long long count = 0
    cdef int* w = _int_array([1] * (nn + 1))
    cdef int* pos = _int_array(list(range(nn + 1)))
    cdef int* r = _int_array(rho)
    cdef int* chosen = _int_array([0] * m)
    try:
        with nogil:
            while True:
                if not _dfs(pos, w, nn, r, m, 0, 0, -1, chosen):
                    count += 1
                i = nn - 1
                while i >= 0 and w[i] == kk:
                    w[i] = 1
                    i -= 1
                if i < 0:
                    break
                w[i] += 1
    finally:
        free(w); free(pos); free(r); free(chosen)
    return int(count)


cdef inline uint64_t _low_mask(int nbits) noexcept nogil:
    if nbits >= 64:
        return <uint64_t> 0xFFFFFFFFFFFFFFFF
    return ((<uint64_t> 1) << nbits) - 1


cdef uint64_t _compress(uint64_t mask, uint64_t ground) noexcept nogil:
    cdef uint64_t out = 0, low
    cdef int r = 0
    while ground:
        low = ground & (~ground + 1)
        if mask & low:
            out |= (<uint64_t> 1) << r
        r += 1
        ground ^= low
    return out


cdef class SchemeEngine:
    """Memoized enumeration scheme for 123-avoiding ordered partitions."""

    cdef public bint use_cache
    cdef public object max_entries
    cdef public dict memo

    def __init__(self, use_cache=True, max_entries=None):
        self.use_cache = use_cache
        self.max_entries = max_entries
        self.memo = {}

    def clear(self):
        self.memo.clear()

    def cache_len(self):
        return len(self.memo)

    def count(self, sizes):
        sizes = tuple(sizes)
        cdef int n = sum(sizes)
        if n > MAX_GROUND:
            raise CapacityError(f"ground set of size {n} exceeds {MAX_GROUND}-bit masks")
        if len(sizes) == 1:
            return 1
        total = 0
        cdef int b1 = sizes[0]
        for smask in _combinations(_low_mask(n), b1):
            total += self._count_s(sizes, smask)
        return total

    def count_s(self, sizes, s):
        return self._count_s(tuple(sizes), <uint64_t> s)

    def count_st(self, sizes, s, t):
        sizes = tuple(sizes)
        return self._count_st(sizes, <uint64_t> s, <uint64_t> t, sum(sizes))

    cdef object _count_s(self, tuple sizes, uint64_t s):
        if len(sizes) <= 2:
            return 1
        key = (sizes, s)
        if self.use_cache:
            hit = self.memo.get(key)
            if hit is not None:
                return hit
        cdef int n = sum(sizes)
        cdef uint64_t free_mask = _low_mask(n) & ~s
        cdef int b2 = sizes[1]
        cdef int nfree = __builtin_popcountll(free_mask)
        cdef int* pos = <int*> malloc((nfree + 1) * sizeof(int))
        cdef int* idx = <int*> malloc((b2 + 1) * sizeof(int))
        cdef int i, r
        cdef uint64_t g = free_mask, t
        total = 0
        try:
            r = 0
            while g:
                pos[r] = __builtin_ctzll(g)
                g &= g - 1
                r += 1
            for i in range(b2):
                idx[i] = i
            while True:
                t = 0
                for i in range(b2):
                    t |= (<uint64_t> 1) << pos[idx[i]]
                total += self._count_st(sizes, s, t, n)
                # next combination of b2 indices out of nfree
                i = b2 - 1
                while i >= 0 and idx[i] == nfree - b2 + i:
                    i -= 1
                if i < 0:
                    break
                idx[i] += 1
                for r in range(i + 1, b2):
                    idx[r] = idx[r - 1] + 1
        finally:
            free(pos)
            free(idx)
        if self.use_cache and (self.max_entries is None or len(self.memo) < self.max_entries):
            self.memo[key] = total
        return total

    cdef object _count_st(self, tuple sizes, uint64_t s, uint64_t t, int n):
        cdef uint64_t full = _low_mask(n)
        cdef int min_s = __builtin_ctzll(s)
        cdef int max_t = 63 - __builtin_clzll(t)
        cdef uint64_t above, below
        cdef int ibit, a, b
        if min_s > max_t:
            return self._count_s(sizes[1:], _compress(t, full & ~s))
        above = t & ~_low_mask(min_s + 1)
        ibit = __builtin_ctzll(above)
        below = _low_mask(ibit)
        a = __builtin_popcountll(s & below)
        b = __builtin_popcountll(t & below)
        if (full & ~below) & ~(s | t):
            return 0
        rest = sizes[2:]
        assert ibit == a + b + sum(rest), "scheme invariant i-1 = a+b+sum(rest) broken"
        if b == 0:
            return self._count_s((a,) + rest, s & below)
        return self._count_s((b,) + rest, _compress(t & below, below & ~s))


def _combinations(uint64_t ground, int size):
    """Yield every submask of ``ground`` with ``size`` bits, as Python ints."""
    cdef int nfree = __builtin_popcountll(ground)
    cdef int i, r
    cdef uint64_t t
    pos = []
    cdef uint64_t g = ground
    while g:
        pos.append(__builtin_ctzll(g))
        g &= g - 1
    idx = list(range(size))
    if size > nfree:
        return
    while True:
        t = 0
        for i in range(size):
            t |= (<uint64_t> 1) << <int> pos[idx[i]]
        yield t
        i = size - 1
        while i >= 0 and idx[i] == nfree - size + i:
            i -= 1
        if i < 0:
            return
        idx[i] += 1
        for r in range(i + 1, size):
            idx[r] = idx[r - 1] + 1
