"""Constructive maps between classes of ordered partitions and words.

* :func:`phi_123_to_132` / :func:`phi_inverse` keep the left-to-right minima
  in place and refill the other slots.
* :func:`block_swap` exchanges the sizes of two adjacent blocks of a
  123-avoider.
* :func:`psi_word` carries ``phi`` over to words through graph inversion.
* :func:`sw_encode` / :func:`sw_decode` inject star partitions (empty blocks
  allowed) into nonempty ones tagged with a word of length ``2k``.
* :func:`split_subadditive` cuts a star partition at a value threshold.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import (
    OrderedSetPartition,
    Pattern,
    contains_pattern,
    left_to_right_minima,
    partition_from_word,
    require_avoids,
    reverse_blocks,
    word_contains,
    word_from_partition,
)
from .errors import CapacityError, DomainError, MalformedEncodingError, PreconditionError


def _refill(p: OrderedSetPartition, descending: bool) -> OrderedSetPartition:
    minima = left_to_right_minima(p)
    pool = sorted(x for b in p.blocks for x in b if x not in minima)
    if descending:
        pool.reverse()
    out = []
    running = math.inf
    for block in p.blocks:
        kept = [x for x in block if x in minima]
        for _ in range(len(block) - len(kept)):
            # first pool entry above the minimum of all earlier blocks
            for idx, x in enumerate(pool):
                if x > running:
                    kept.append(pool.pop(idx))
                    break
            else:
                raise PreconditionError(f"no element above {running} left while refilling {p}")
        out.append(tuple(kept))
        if block:
            running = min(running, block[0])
    return OrderedSetPartition(tuple(out), allow_empty=p.allow_empty)


def phi_123_to_132(p: OrderedSetPartition) -> OrderedSetPartition:
    """123-avoider to 132-avoider with the same shape and left-to-right minima.

    Non-minimum slots are filled block by block with the smallest unused
    non-minimum that exceeds every element of the earlier blocks. Empty
    blocks stay empty.
    """
    require_avoids(p, "123")
    return _refill(p, descending=False)


def phi_inverse(p: OrderedSetPartition) -> OrderedSetPartition:
    """Undo :func:`phi_123_to_132` by placing the non-minima in descending order."""
    require_avoids(p, "132")
    return _refill(p, descending=True)


def _swap_parts(p: OrderedSetPartition, i: int):
    if any(not b for b in p.blocks):
        raise DomainError("block_swap needs nonempty blocks")
    if not 1 <= i <= p.k - 1:
        raise DomainError(f"block index {i} outside 1..{p.k - 1}")
    require_avoids(p, "123")
    earlier = [x for b in p.blocks[: i - 1] for x in b]
    later = [x for b in p.blocks[i + 1 :] for x in b]
    low = min(earlier, default=math.inf)
    high = max(later, default=-math.inf)
    union = sorted(p.blocks[i - 1] + p.blocks[i])
    # "has a smaller element earlier" and "has a larger element later"
    # never hold together for a 123-avoider
    has_earlier = [x for x in union if x > low]
    has_later = [x for x in union if x < high]
    return union, has_earlier, has_later, low, high


def block_swap(p: OrderedSetPartition, i: int) -> OrderedSetPartition:
    """Exchange the sizes of blocks ``i`` and ``i+1`` (1-based) of a 123-avoider.

    The new block ``i`` takes block ``i+1``'s elements that form no 12 with
    an element outside the pair, plus the largest ``a`` elements of the pair
    having a larger element later and the largest ``b`` having a smaller
    element earlier, where ``a`` and ``b`` count those kinds in old block
    ``i+1``. Everything else goes to the new block ``i+1``.
    """
    union, has_earlier, has_later, low, high = _swap_parts(p, i)
    nxt = p.blocks[i]
    free = [x for x in nxt if not (x > low or x < high)]
    a = sum(1 for x in nxt if x < high)
    b = sum(1 for x in nxt if x > low)
    new_i = set(free) | set(has_later[len(has_later) - a :]) | set(has_earlier[len(has_earlier) - b :])
    new_next = [x for x in union if x not in new_i]
    blocks = list(p.blocks)
    blocks[i - 1] = tuple(new_i)
    blocks[i] = tuple(new_next)
    return OrderedSetPartition(tuple(blocks))


def block_swap_inverse(q: OrderedSetPartition, i: int) -> OrderedSetPartition:
    """Left inverse of :func:`block_swap` for the same ``i``."""
    union, has_earlier, has_later, low, high = _swap_parts(q, i)
    cur = q.blocks[i - 1]
    free = [x for x in cur if not (x > low or x < high)]
    a = sum(1 for x in cur if x < high)
    b = sum(1 for x in cur if x > low)
    old_next = set(free) | set(has_later[:a]) | set(has_earlier[:b])
    blocks = list(q.blocks)
    blocks[i - 1] = tuple(x for x in union if x not in old_next)
    blocks[i] = tuple(old_next)
    return OrderedSetPartition(tuple(blocks))


def psi_word(w: Sequence[int], k: int | None = None) -> tuple[int, ...]:
    """123-avoiding word to 132-avoiding word: invert, apply phi, invert back."""
    w = tuple(w)
    if word_contains(w, (1, 2, 3)):
        raise PreconditionError(f"word {w} contains 123")
    return word_from_partition(phi_123_to_132(partition_from_word(w, k)))


# -- star partitions ----------------------------------------------------------


@dataclass(frozen=True)
class StarEncoding:
    """A nonempty-block partition plus a tag word over ``0..k`` of length ``2k``."""

    compact: OrderedSetPartition
    tag: tuple[int, ...]

    def __post_init__(self):
        k = self.compact.k
        if len(self.tag) != 2 * k:
            raise MalformedEncodingError(f"tag has length {len(self.tag)}, expected {2 * k}")
        if any(not 0 <= x <= k for x in self.tag):
            raise MalformedEncodingError(f"tag letters must lie in 0..{k}")

    def tag_text(self) -> str:
        if self.compact.k <= 9:
            return "".join(map(str, self.tag))
        return ",".join(map(str, self.tag))

    def __str__(self) -> str:
        return f"{self.compact} {self.tag_text()}"


def _ends_with_max(rho: Pattern) -> bool:
    return rho.entries[-1] == len(rho)


def _mirror_tag(tag: tuple[int, ...], k: int) -> tuple[int, ...]:
    """Tag of the block-reversed construction, read in the original orientation."""
    flip = lambda x: 0 if x == 0 else k + 1 - x  # noqa: E731
    head = tuple(flip(x) for x in reversed(tag[:k]))
    tail = tuple(flip(x) for x in reversed(tag[k:]))
    return head + tail


def _encode_core(p: OrderedSetPartition) -> StarEncoding:
    k, n = p.k, p.n
    nonempty = [j for j, b in enumerate(p.blocks) if b]
    cur = [list(p.blocks[j]) for j in nonempty] + [[] for _ in range(k - len(nonempty))]
    head = tuple(j + 1 for j in nonempty) + (0,) * (k - len(nonempty))
    source = {x: j + 1 for j, b in enumerate(cur) for x in b}
    ever_empty = [not b for b in cur]
    stages = [[list(b) for b in cur]]
    rnd = 0
    while True:
        targets = [j for j in range(k) if not cur[j]]
        if not targets:
            break
        rnd += 1
        pool = sorted(x for j in range(k) if not ever_empty[j] for x in cur[j])
        if len(pool) < len(targets):
            raise CapacityError("ran out of elements to fill empty blocks")
        moved = pool[len(pool) - len(targets) :]
        for x in moved:
            cur[source[x] - 1].remove(x)
        if rnd > 1:
            # order-isomorphic to the targets' maxima before they were emptied
            before = stages[rnd - 2]
            targets.sort(key=lambda j: max(before[j]))
        for j, x in zip(targets, moved):
            cur[j] = [x]
        for j in range(k):
            if not cur[j] and not ever_empty[j]:
                ever_empty[j] = True
        stages.append([list(b) for b in cur])
    compact = OrderedSetPartition(tuple(tuple(b) for b in cur))
    tail = tuple(source[b[0]] if len(b) == 1 else 0 for b in compact.blocks)
    return StarEncoding(compact, head + tail)


def _decode_core(e: StarEncoding) -> OrderedSetPartition:
    k = e.compact.k
    head, tail = e.tag[:k], e.tag[k:]
    stage0 = [[] for _ in range(k)]
    for i, block in enumerate(e.compact.blocks):
        if len(block) == 1:
            if tail[i] == 0:
                raise MalformedEncodingError(f"singleton block {i + 1} has no source index")
            stage0[tail[i] - 1].append(block[0])
        else:
            if tail[i] != 0:
                raise MalformedEncodingError(f"block {i + 1} has {len(block)} elements but tag {tail[i]}")
            stage0[i].extend(block)
    blocks = [()] * k
    placed = set()
    for i, j in enumerate(head):
        if j == 0:
            if stage0[i]:
                raise MalformedEncodingError(f"block {i + 1} is marked empty but receives elements")
            continue
        if not stage0[i] or j in placed:
            raise MalformedEncodingError(f"head letter {j} at {i + 1} is inconsistent")
        placed.add(j)
        blocks[j - 1] = tuple(stage0[i])
    return OrderedSetPartition(tuple(blocks), allow_empty=True)


def sw_encode(p: OrderedSetPartition, rho) -> StarEncoding:
    """Encode a ``rho``-avoiding star partition as (nonempty avoider, tag).

    Empty blocks move to the end, keeping the order of the others, and are
    refilled round by round with the largest elements still sitting in
    blocks that were never empty: in increasing order in the first round,
    later in the relative order of the refilled blocks' maxima two stages
    back. When ``rho`` ends with its maximum the whole construction runs on
    the block-reversed partition against the reversed pattern, so the
    empty blocks gather at the front instead.

    The tag's first ``k`` letters name each block's original position (0 if
    it started empty); the last ``k`` name, for every singleton of the
    result, the block it occupied after the first move (0 for larger
    blocks).
    """
    rho = Pattern.of(rho)
    if p.n < p.k:
        raise CapacityError(f"need n >= k to fill every block, got n={p.n}, k={p.k}")
    require_avoids(p, rho)
    if _ends_with_max(rho):
        inner = _encode_core(reverse_blocks(p))
        return StarEncoding(reverse_blocks(inner.compact), _mirror_tag(inner.tag, p.k))
    return _encode_core(p)


def sw_decode(e: StarEncoding, rho) -> OrderedSetPartition:
    """Inverse of :func:`sw_encode` on its image; other input raises
    :class:`MalformedEncodingError`."""
    rho = Pattern.of(rho)
    if _ends_with_max(rho):
        k = e.compact.k
        inner = StarEncoding(reverse_blocks(e.compact), _mirror_tag(e.tag, k))
        p = reverse_blocks(_decode_core(inner))
    else:
        p = _decode_core(e)
    if contains_pattern(p, rho) or sw_encode(p, rho) != e:
        raise MalformedEncodingError(f"{e} is not the encoding of any {rho}-avoider")
    return p


def split_subadditive(p: OrderedSetPartition, m: int) -> tuple[OrderedSetPartition, OrderedSetPartition]:
    """Split into the values ``1..m`` and ``m+1..n`` (shifted down), keeping all ``k`` blocks."""
    n = p.n
    if not 0 <= m <= n:
        raise DomainError(f"need 0 <= m <= {n}, got {m}")
    low = tuple(tuple(x for x in b if x <= m) for b in p.blocks)
    high = tuple(tuple(x - m for x in b if x > m) for b in p.blocks)
    return OrderedSetPartition(low, allow_empty=True), OrderedSetPartition(high, allow_empty=True)
