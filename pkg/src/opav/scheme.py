"""Recursive counting of 123-avoiding ordered partitions by block prefix.

``op[b](123)`` is split by the first block ``s``, then by the second block
``t``; each ``(s, t)`` state either drops the first block, is impossible,
or collapses to a smaller first-block state. States are memoized on
``(sizes, bitmask of s)``.
"""
from __future__ import annotations

import math
from collections import Counter
from typing import Iterable, Sequence

from . import _backend
from .core import check_sizes
from .errors import CapacityError, DomainError

_engines: dict[str, object] = {}


def engine(backend: str | None = None):
    """The shared memoized engine for a kernel backend (default: active one)."""
    mod = _backend.kernels if backend is None else _module(backend)
    eng = _engines.get(mod.NAME)
    if eng is None:
        eng = _engines[mod.NAME] = mod.SchemeEngine()
    return eng


def _module(name):
    for mod in _backend.available():
        if mod.NAME == name:
            return mod
    raise ValueError(f"kernel backend {name!r} is not available")


def to_mask(subset: Iterable[int], n: int) -> int:
    mask = 0
    for x in subset:
        if not 1 <= x <= n:
            raise DomainError(f"element {x} outside 1..{n}")
        mask |= 1 << (x - 1)
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    x = 1
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return frozenset(out)


def _checked(sizes):
    sizes = check_sizes(sizes)
    n = sum(sizes)
    if n > 64:
        raise CapacityError(f"ground set of size {n} exceeds 64-bit subset masks")
    return sizes, n


def scheme_count(sizes: Sequence[int], *, backend: str | None = None) -> int:
    """``op[b_1..b_k](123)``, summed over every possible first block."""
    sizes, _ = _checked(sizes)
    return engine(backend).count(sizes)


def scheme_count_s(sizes: Sequence[int], s: Iterable[int], *, backend: str | None = None) -> int:
    """Avoiders of shape ``sizes`` whose first block is exactly ``s``."""
    sizes, n = _checked(sizes)
    s = set(s)
    if len(s) != sizes[0]:
        raise DomainError(f"first block {sorted(s)} must have {sizes[0]} elements")
    return engine(backend).count_s(sizes, to_mask(s, n))


def scheme_count_st(
    sizes: Sequence[int], s: Iterable[int], t: Iterable[int], *, backend: str | None = None
) -> int:
    """Avoiders of shape ``sizes`` whose first two blocks are ``s`` and ``t``."""
    sizes, n = _checked(sizes)
    s, t = set(s), set(t)
    if len(sizes) < 2:
        raise DomainError("two prefix blocks need k >= 2")
    if len(s) != sizes[0] or len(t) != sizes[1] or s & t:
        raise DomainError("s and t must be disjoint with sizes b_1 and b_2")
    return engine(backend).count_st(sizes, to_mask(s, n), to_mask(t, n))


def classify_st(sizes: Sequence[int], s: Iterable[int], t: Iterable[int]) -> tuple[str, tuple | None]:
    """Which reduction a two-block prefix takes, and the state it reduces to.

    Returns ``("drop", (sizes', first_block'))`` when every element of ``s``
    exceeds every element of ``t``; ``("zero", None)`` when a later block
    must hold something above ``i`` (the least element of ``t`` above
    ``min(s)``); otherwise ``("collapse", (sizes', first_block'))``.
    """
    sizes = check_sizes(sizes)
    n = sum(sizes)
    s, t = sorted(s), sorted(t)
    if s[0] > t[-1]:
        rest = sorted(set(range(1, n + 1)) - set(s))
        relabel = {x: r for r, x in enumerate(rest, start=1)}
        return "drop", (sizes[1:], frozenset(relabel[x] for x in t))
    i = min(x for x in t if x > s[0])
    a = sum(1 for x in s if x < i)
    b = sum(1 for x in t if x < i)
    if not set(range(i, n + 1)) <= set(s) | set(t):
        return "zero", None
    low_s = [x for x in s if x < i]
    low_t = [x for x in t if x < i]
    if b == 0:
        return "collapse", ((a,) + sizes[2:], frozenset(low_s))
    rest = sorted(set(range(1, i)) - set(low_s))
    relabel = {x: r for r, x in enumerate(rest, start=1)}
    return "collapse", ((b,) + sizes[2:], frozenset(relabel[x] for x in low_t))


def shape_classes(n: int, k: int):
    """Yield ``(shape, multiplicity)``: partitions of n into k parts with their orderings."""

    def parts(total, count, cap):
        if count == 0:
            if total == 0:
                yield ()
            return
        for first in range(min(cap, total - count + 1), 0, -1):
            for rest in parts(total - first, count - 1, first):
                yield (first,) + rest

    for shape in parts(n, k, n):
        mult = math.factorial(k)
        for c in Counter(shape).values():
            mult //= math.factorial(c)
        yield shape, mult


def op123_nk(n: int, k: int, *, backend: str | None = None) -> int:
    """``op_{n,k}(123)``; each size multiset is evaluated once and weighted
    by its number of orderings, since the count ignores block order."""
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    return sum(mult * scheme_count(shape, backend=backend) for shape, mult in shape_classes(n, k))


def op123_n(n: int, *, backend: str | None = None) -> int:
    if n < 1:
        raise DomainError("need n >= 1")
    return sum(op123_nk(n, k, backend=backend) for k in range(1, n + 1))
