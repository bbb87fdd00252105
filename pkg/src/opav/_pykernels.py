"""Pure-Python hot loops; the fallback when ``_kernels`` is not compiled.

Same function names and semantics as ``_kernels.pyx``. Subsets of ``[N]``
are bitmasks with element ``x`` at bit ``x - 1``.
"""
import itertools

from .errors import CapacityError

MAX_GROUND = 64
NAME = "python"


def _points_contain(pblk, pval, rho):
    """Points ``(block, value)`` sorted by block; one point per block in an occurrence."""
    m = len(rho)
    npts = len(pval)
    chosen = [0] * m

    def dfs(j, start, prev):
        if j == m:
            return True
        rj = rho[j]
        for i in range(start, npts - (m - j) + 1):
            if pblk[i] <= prev:
                continue
            v = pval[i]
            for x in range(j):
                c = chosen[x]
                if c == v or (c < v) != (rho[x] < rj):
                    break
            else:
                chosen[j] = v
                if dfs(j + 1, i + 1, pblk[i]):
                    return True
        return False

    return dfs(0, 0, -1)


def points_contain(pblk, pval, rho):
    return _points_contain(list(pblk), list(pval), tuple(rho))


def _blocks_contain(blocks, rho):
    pblk, pval = [], []
    for j, b in enumerate(blocks):
        for x in b:
            pblk.append(j)
            pval.append(x)
    return _points_contain(pblk, pval, rho)


def count_fixed(sizes, rho):
    """Avoiders of ``rho`` among all partitions of shape ``sizes``."""
    sizes = tuple(sizes)
    rho = tuple(rho)
    k = len(sizes)
    if k < len(rho):
        return _multinomial(sizes)
    n = sum(sizes)
    blocks = [[] for _ in range(k)]
    room = list(sizes)
    count = 0

    def rec(x):
        nonlocal count
        if x > n:
            if not _blocks_contain(blocks, rho):
                count += 1
            return
        for j in range(k):
            if room[j]:
                room[j] -= 1
                blocks[j].append(x)
                rec(x + 1)
                blocks[j].pop()
                room[j] += 1

    rec(1)
    return count


def count_star(n, k, rho):
    rho = tuple(rho)
    count = 0
    for vec in itertools.product(range(k), repeat=n):
        blocks = [[] for _ in range(k)]
        for x, j in enumerate(vec, start=1):
            blocks[j].append(x)
        if not _blocks_contain(blocks, rho):
            count += 1
    return count


def count_words(k, n, rho):
    rho = tuple(rho)
    pos = list(range(n))
    count = 0
    for w in itertools.product(range(1, k + 1), repeat=n):
        if not _points_contain(pos, w, rho):
            count += 1
    return count


def _multinomial(sizes):
    from math import comb

    total, out = 0, 1
    for b in sizes:
        total += b
        out *= comb(total, b)
    return out


def _compress(mask, ground):
    """Keep the bits of ``mask`` that lie in ``ground``, packed to the bottom."""
    out = 0
    r = 0
    g = ground
    while g:
        low = g & -g
        if mask & low:
            out |= 1 << r
        r += 1
        g ^= low
    return out


def _bits(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class SchemeEngine:
    """Memoized enumeration scheme for 123-avoiding ordered partitions.

    ``count_s`` is keyed on ``(sizes, first-block mask)``; ``max_entries``
    caps the memo, after which new states are recomputed rather than stored.
    """

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
        n = sum(sizes)
        if n > MAX_GROUND:
            raise CapacityError(f"ground set of size {n} exceeds {MAX_GROUND}-bit masks")
        if len(sizes) == 1:
            return 1
        total = 0
        for combo in itertools.combinations(range(n), sizes[0]):
            s = 0
            for bit in combo:
                s |= 1 << bit
            total += self.count_s(sizes, s)
        return total

    def count_s(self, sizes, s):
        if len(sizes) <= 2:
            return 1
        key = (sizes, s)
        memo = self.memo
        if self.use_cache:
            hit = memo.get(key)
            if hit is not None:
                return hit
        n = sum(sizes)
        full = (1 << n) - 1
        free = _bits(full & ~s)
        total = 0
        for combo in itertools.combinations(free, sizes[1]):
            t = 0
            for bit in combo:
                t |= 1 << bit
            total += self.count_st(sizes, s, t)
        if self.use_cache and (self.max_entries is None or len(memo) < self.max_entries):
            memo[key] = total
        return total

    def count_st(self, sizes, s, t):
        n = sum(sizes)
        full = (1 << n) - 1
        min_s = (s & -s).bit_length() - 1
        max_t = t.bit_length() - 1
        if min_s > max_t:
            # block 1 sits above block 2: it cannot start a new 123
            return self.count_s(sizes[1:], _compress(t, full & ~s))
        above = t & ~((2 << min_s) - 1)
        ibit = (above & -above).bit_length() - 1
        below = (1 << ibit) - 1
        a = bin(s & below).count("1")
        b = bin(t & below).count("1")
        if (full & ~below) & ~(s | t):
            # some later block holds an element larger than i
            return 0
        rest = sizes[2:]
        assert ibit == a + b + sum(rest), "scheme invariant i-1 = a+b+sum(rest) broken"
        if b == 0:
            return self.count_s((a,) + rest, s & below)
        return self.count_s((b,) + rest, _compress(t & below, below & ~s))
