"""Ordered set partitions, patterns, words, and the brute-force oracle.

Elements are 1-based: a partition of size ``n`` covers ``{1, ..., n}``.
Blocks are kept as sorted tuples. A partition built with
``allow_empty=True`` may carry empty blocks (the "star" family); equality
and hashing only look at the blocks.
"""
from __future__ import annotations

import bisect
import itertools
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import _backend
from .errors import BudgetExceededError, DomainError, PreconditionError

DEFAULT_BUDGET = 10**8


def default_budget() -> int:
    """Enumeration cap: ``OPAV_BUDGET`` if set, else 10**8."""
    raw = os.environ.get("OPAV_BUDGET")
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"OPAV_BUDGET must be an integer, got {raw!r}") from None
    if value < 0:
        raise DomainError("OPAV_BUDGET must be nonnegative")
    return value


def _check_budget(needed: int, budget: int | None) -> None:
    limit = default_budget() if budget is None else budget
    if needed > limit:
        raise BudgetExceededError(needed, limit)


# -- domain types -----------------------------------------------------------


@dataclass(frozen=True)
class Pattern:
    """A permutation of ``{1, ..., m}`` used as a forbidden pattern."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise DomainError("pattern must be nonempty")
        if sorted(entries) != list(range(1, len(entries) + 1)):
            raise DomainError(f"{entries} is not a permutation of 1..{len(entries)}")

    @classmethod
    def of(cls, value: "Pattern | str | Sequence[int]") -> "Pattern":
        """Coerce a Pattern, a digit string like ``"132"``, or a sequence."""
        if isinstance(value, Pattern):
            return value
        if isinstance(value, str):
            text = value.strip()
            if "," in text:
                return cls(tuple(int(t) for t in text.split(",")))
            if not text.isdigit():
                raise DomainError(f"cannot parse pattern {value!r}")
            return cls(tuple(int(c) for c in text))
        return cls(tuple(value))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self) -> str:
        if len(self.entries) <= 9:
            return "".join(map(str, self.entries))
        return ",".join(map(str, self.entries))


@dataclass(frozen=True)
class OrderedSetPartition:
    """An ordered list of disjoint blocks whose union is ``{1, ..., n}``."""

    blocks: tuple[tuple[int, ...], ...]
    allow_empty: bool = field(default=False, compare=False)

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(x) for x in b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise DomainError("a partition needs at least one block")
        seen = [x for b in blocks for x in b]
        if sorted(seen) != list(range(1, len(seen) + 1)):
            raise DomainError(f"blocks {blocks} do not partition 1..{len(seen)}")
        if not self.allow_empty and any(not b for b in blocks):
            raise DomainError("empty block in a partition built with allow_empty=False")

    @classmethod
    def star(cls, blocks: Iterable[Iterable[int]]) -> "OrderedSetPartition":
        return cls(tuple(tuple(b) for b in blocks), allow_empty=True)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def has_empty_block(self) -> bool:
        return any(not b for b in self.blocks)

    def block_of(self) -> dict[int, int]:
        """Map each element to the 0-based index of its block."""
        return {x: j for j, b in enumerate(self.blocks) for x in b}

    def __str__(self) -> str:
        return "/".join(",".join(map(str, b)) if b else "-" for b in self.blocks)


def check_sizes(sizes: Sequence[int]) -> tuple[int, ...]:
    """Validate a block-size list (a composition) and return it as a tuple."""
    sizes = tuple(int(b) for b in sizes)
    if not sizes:
        raise DomainError("block sizes must be a nonempty list")
    if any(b < 1 for b in sizes):
        raise DomainError(f"block sizes must be positive, got {sizes}")
    return sizes


def multinomial(sizes: Sequence[int]) -> int:
    total, out = 0, 1
    for b in sizes:
        total += b
        out *= math.comb(total, b)
    return out


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All compositions of ``n`` into ``k`` positive parts, lexicographically."""
    if k == 0:
        if n == 0:
            yield ()
        return
    for first in range(1, n - k + 2):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def surjection_count(n: int, k: int) -> int:
    """Number of ordered partitions of [n] into k nonempty blocks."""
    return sum((-1) ** j * math.comb(k, j) * (k - j) ** n for j in range(k + 1))


# -- symmetries and relabeling ----------------------------------------------


def reversal(rho) -> Pattern:
    return Pattern(Pattern.of(rho).entries[::-1])


def complement(rho) -> Pattern:
    rho = Pattern.of(rho)
    m = len(rho)
    return Pattern(tuple(m + 1 - x for x in rho.entries))


def reverse_blocks(p: OrderedSetPartition) -> OrderedSetPartition:
    return OrderedSetPartition(p.blocks[::-1], allow_empty=p.allow_empty)


def complement_partition(p: OrderedSetPartition) -> OrderedSetPartition:
    n = p.n
    return OrderedSetPartition(
        tuple(tuple(n + 1 - x for x in b) for b in p.blocks), allow_empty=p.allow_empty
    )


def standardize(elements: Iterable[int]) -> dict[int, int]:
    """Order-preserving relabeling of ``elements`` onto ``1..len(elements)``."""
    return {x: i for i, x in enumerate(sorted(set(elements)), start=1)}


def restrict(
    p: OrderedSetPartition, subset: Iterable[int], keep_empty: bool = False
) -> OrderedSetPartition:
    """Restrict ``p`` to ``subset`` and standardize.

    With ``keep_empty`` all ``k`` block positions survive (a star
    partition); otherwise blocks that lose every element are dropped.
    """
    keep = set(subset)
    relabel = standardize(keep & {x for b in p.blocks for x in b})
    blocks = [tuple(relabel[x] for x in b if x in keep) for b in p.blocks]
    if not keep_empty:
        blocks = [b for b in blocks if b]
        if not blocks:
            raise DomainError("restriction to an empty set has no blocks")
    return OrderedSetPartition(tuple(blocks), allow_empty=keep_empty)


def left_to_right_minima(p: OrderedSetPartition) -> set[int]:
    """Elements smaller than everything in earlier blocks.

    Every element of the first nonempty block qualifies. Empty blocks are
    skipped.
    """
    out = set()
    running = math.inf
    for b in p.blocks:
        out.update(x for x in b if x < running)
        if b:
            running = min(running, b[0])
    return out


# -- containment ------------------------------------------------------------


def contains_pattern(p: OrderedSetPartition, rho) -> bool:
    """True iff one element from each of ``m`` blocks, in block order, forms ``rho``.

    Two elements of the same block never appear in one occurrence.
    """
    rho = Pattern.of(rho).entries
    blocks = [b for b in p.blocks if b]
    m, nb = len(rho), len(blocks)
    if nb < m:
        return False
    # For each pattern position j, the earlier positions that bound it.
    below = [[x for x in range(j) if rho[x] < rho[j]] for j in range(m)]
    above = [[x for x in range(j) if rho[x] > rho[j]] for j in range(m)]
    failed = set()
    chosen = [0] * m

    def search(j: int, start: int) -> bool:
        if j == m:
            return True
        key = (j, start, tuple(chosen[:j]))
        if key in failed:
            return False
        lo = max((chosen[x] for x in below[j]), default=0)
        hi = min((chosen[x] for x in above[j]), default=math.inf)
        for bi in range(start, nb - (m - j) + 1):
            block = blocks[bi]
            pos = bisect.bisect_right(block, lo)
            while pos < len(block) and block[pos] < hi:
                chosen[j] = block[pos]
                if search(j + 1, bi + 1):
                    return True
                pos += 1
        failed.add(key)
        return False

    return search(0, 0)


def avoids(p: OrderedSetPartition, rho) -> bool:
    return not contains_pattern(p, rho)


def word_contains(w: Sequence[int], u) -> bool:
    """True iff some subsequence of ``w`` is order-isomorphic to ``u``.

    Equal letters compare equal, so a permutation pattern needs distinct
    letters in the occurrence.
    """
    u = tuple(u.entries) if isinstance(u, Pattern) else tuple(u)
    m = len(u)
    if len(w) < m:
        return False

    def iso(chosen: tuple[int, ...]) -> bool:
        j = len(chosen) - 1
        return all(
            (chosen[x] < chosen[j]) == (u[x] < u[j])
            and (chosen[x] == chosen[j]) == (u[x] == u[j])
            for x in range(j)
        )

    def search(start: int, chosen: tuple[int, ...]) -> bool:
        if len(chosen) == m:
            return True
        for i in range(start, len(w) - (m - len(chosen)) + 1):
            nxt = chosen + (w[i],)
            if iso(nxt) and search(i + 1, nxt):
                return True
        return False

    return search(0, ())


# -- generators -------------------------------------------------------------


def _assignments_with_sizes(sizes: tuple[int, ...]) -> Iterator[list[int]]:
    n = sum(sizes)
    remaining = list(sizes)
    vec = [0] * n

    def rec(pos: int):
        if pos == n:
            yield vec
            return
        for j, left in enumerate(remaining):
            if left:
                remaining[j] -= 1
                vec[pos] = j
                yield from rec(pos + 1)
                remaining[j] += 1

    yield from rec(0)


def _from_assignment(vec: Sequence[int], k: int, allow_empty: bool) -> OrderedSetPartition:
    blocks = [[] for _ in range(k)]
    for x, j in enumerate(vec, start=1):
        blocks[j].append(x)
    return OrderedSetPartition(tuple(map(tuple, blocks)), allow_empty=allow_empty)


def enumerate_partitions(sizes: Sequence[int]) -> Iterator[OrderedSetPartition]:
    """Every ordered partition with block sizes ``sizes``.

    Order is lexicographic on the assignment vector (the block index of
    element 1, then of element 2, ...).
    """
    sizes = check_sizes(sizes)
    for vec in _assignments_with_sizes(sizes):
        yield _from_assignment(vec, len(sizes), allow_empty=False)


def enumerate_partitions_star(n: int, k: int) -> Iterator[OrderedSetPartition]:
    """All ``k**n`` assignments of ``[n]`` into ``k`` possibly empty blocks."""
    if n < 0 or k < 1:
        raise DomainError(f"need n >= 0 and k >= 1, got n={n}, k={k}")
    for vec in itertools.product(range(k), repeat=n):
        yield _from_assignment(vec, k, allow_empty=True)


def enumerate_partitions_nk(n: int, k: int) -> Iterator[OrderedSetPartition]:
    """Ordered partitions of [n] into k nonempty blocks, composition by composition."""
    for sizes in compositions(n, k):
        yield from enumerate_partitions(sizes)


# -- the counting oracle ----------------------------------------------------


def count_by_enumeration(sizes: Sequence[int], rho, budget: int | None = None) -> int:
    """Count partitions of shape ``sizes`` avoiding ``rho`` by checking each one."""
    sizes = check_sizes(sizes)
    rho = Pattern.of(rho)
    _check_budget(multinomial(sizes), budget)
    return _backend.kernels.count_fixed(sizes, rho.entries)


def count_nk_by_enumeration(
    n: int, k: int, rho, star: bool = False, budget: int | None = None
) -> int:
    """Brute-force ``op_{n,k}(rho)``, or the star count when ``star`` is set."""
    rho = Pattern.of(rho)
    if star:
        if n < 0 or k < 1:
            raise DomainError(f"need n >= 0 and k >= 1, got n={n}, k={k}")
        _check_budget(k**n, budget)
        return _backend.kernels.count_star(n, k, rho.entries)
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    _check_budget(surjection_count(n, k), budget)
    return sum(_backend.kernels.count_fixed(c, rho.entries) for c in compositions(n, k))


def count_words_avoiding(k: int, n: int, rho, budget: int | None = None) -> int:
    """Number of words in ``[k]^n`` avoiding ``rho``, by exhaustive generation."""
    if k < 1 or n < 0:
        raise DomainError(f"need k >= 1 and n >= 0, got k={k}, n={n}")
    rho = Pattern.of(rho)
    _check_budget(k**n, budget)
    return _backend.kernels.count_words(k, n, rho.entries)


# -- words and star partitions ----------------------------------------------


def partition_from_word(w: Sequence[int], k: int | None = None) -> OrderedSetPartition:
    """Block ``j`` collects the positions ``i`` with ``w[i] == j``."""
    w = tuple(int(x) for x in w)
    if k is None:
        k = max(w, default=1)
    if k < 1 or any(not 1 <= x <= k for x in w):
        raise DomainError(f"word {w} is not over the alphabet 1..{k}")
    blocks = [[] for _ in range(k)]
    for i, letter in enumerate(w, start=1):
        blocks[letter - 1].append(i)
    return OrderedSetPartition(tuple(map(tuple, blocks)), allow_empty=True)


def word_from_partition(p: OrderedSetPartition) -> tuple[int, ...]:
    """Inverse of :func:`partition_from_word`: letter ``i`` is the block holding ``i``."""
    where = p.block_of()
    return tuple(where[i] + 1 for i in range(1, p.n + 1))


def require_avoids(p: OrderedSetPartition, rho) -> None:
    if contains_pattern(p, rho):
        raise PreconditionError(f"{p} contains {Pattern.of(rho)}")
