"""Closed forms and summation formulas for small pattern-avoidance counts.

Everything is exact integer arithmetic; a division that should be exact
but is not raises :class:`InexactDivisionError`.
"""
from __future__ import annotations

import logging
import math
from functools import lru_cache

from .errors import DomainError, InexactDivisionError

log = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero when ``b < 0`` or ``b > a``."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise InexactDivisionError(f"{num} / {den} leaves remainder {r}")
    return q


def catalan_number(n: int) -> int:
    if n < 0:
        raise DomainError("catalan_number needs n >= 0")
    return exact_div(binom(2 * n, n), n + 1)


def op12_closed(n: int, k: int) -> int:
    """12-avoiding ordered partitions of [n] into k blocks: compositions of n."""
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    return binom(n - 1, k - 1)


def op123_k3_closed(n: int) -> int:
    """``(n^2/8 + 3n/8 - 2) 2^n + 3``, the count for three blocks."""
    if n < 3:
        raise DomainError("three nonempty blocks need n >= 3")
    return exact_div((n * n + 3 * n - 16) * 2**n, 8) + 3


def op123_k3_raw_sum(n: int, validate: bool = False) -> int:
    """Quadruple sum over block-1 size ``a``, block-2 size ``b``, the minimum
    ``l`` of block 1, and the number ``i`` of block-2 elements below ``l``."""
    if n < 3:
        raise DomainError("three nonempty blocks need n >= 3")
    total = 0
    for a in range(1, n - 1):
        for b in range(1, n - a):
            c = n - a - b
            for ell in range(1, n - a + 2):
                for i in range(max(0, ell - 1 - c), min(ell - 1, b) + 1):
                    total += binom(ell - 1, i) * binom(n - ell, a - 1)
    if validate:
        _report("op123_k3_raw_sum", n, total, op123_k3_closed(n))
    return total


def op132_k3_raw_sum(n: int, validate: bool = False) -> int:
    """Two-case count of 132-avoiders with three blocks.

    First case: no 12 across blocks 1-2. Second case: ``i`` is the smallest
    block-1 element in such a 12, ``j`` the largest block-2 element in one.
    """
    if n < 3:
        raise DomainError("three nonempty blocks need n >= 3")
    first = sum(binom(n, a) for a in range(1, n - 1) for b in range(1, n - a))
    second = 0
    correction = 0
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            inner = sum(binom(j - i - 1, a1) for a1 in range(j - i))
            correction += inner
            below = sum(binom(i - 1, a2) for a2 in range(i))
            tail = sum(binom(n - j, b) for b in range(n - j + 1))
            second += inner * below * tail
    total = first + second - correction
    if validate:
        _report("op132_k3_raw_sum", n, total, op123_k3_closed(n))
    return total


def _report(name: str, n: int, got: int, want: int) -> None:
    if got != want:
        log.warning("%s(%d) = %d disagrees with closed form %d", name, n, got, want)


def raw_sum_mismatches(nmax: int) -> list[tuple[str, int, int, int]]:
    """``(name, n, raw, closed)`` for each raw sum that disagrees with the closed form."""
    out = []
    for n in range(3, nmax + 1):
        want = op123_k3_closed(n)
        for name, fn in (("op123_k3_raw_sum", op123_k3_raw_sum), ("op132_k3_raw_sum", op132_k3_raw_sum)):
            got = fn(n)
            if got != want:
                out.append((name, n, got, want))
    return out


def op123_nminus1_closed(n: int) -> int:
    """123-avoiders of [n] with n-1 blocks: ``3 (n-1)^2 C(2n-2, n-1) / (n (n+1))``."""
    if n < 2:
        raise DomainError("need n >= 2")
    return exact_div(3 * (n - 1) ** 2 * binom(2 * n - 2, n - 1), n * (n + 1))


def op123_nminus1_recurrence_step(n: int, prev: int) -> int:
    """Next term from ``prev = op_{n-1,n-2}(123)``; an inexact quotient means ``prev`` is wrong."""
    if n <= 2:
        raise DomainError("the recurrence step needs n > 2")
    return exact_div((4 * n - 6) * (n - 1) ** 2 * prev, (n - 2) ** 2 * (n + 1))


def op123_nminus1_chain(nmax: int) -> dict[int, int]:
    values = {2: 1}
    for n in range(3, nmax + 1):
        values[n] = op123_nminus1_recurrence_step(n, values[n - 1])
    return values


def catalan_triangle_entry(n: int, i: int) -> int:
    """123-avoiding permutations of [n] that start with ``i``."""
    if not 1 <= i <= n:
        raise DomainError(f"need 1 <= i <= n, got n={n}, i={i}")
    return exact_div(
        math.factorial(n - 2 + i) * (n - i + 1), math.factorial(i - 1) * math.factorial(n)
    )


@lru_cache(maxsize=None)
def catalan_triangle_recurrence(n: int, i: int) -> int:
    """Same entry from the Catalan convolution over the position of ``n``.

    Uses ``c(0, 1) = 1`` for the empty prefix; otherwise zero when ``i > n``.
    """
    if i < 1 or n < 0:
        return 0
    if i == 1:
        return 1
    if i > n:
        return 0
    return sum(catalan_triangle_recurrence(n - j, i - j + 1) * catalan_number(j - 1) for j in range(1, i + 1))


def op123_one_big_block_closed(p: int, n: int) -> int:
    """Shape ``[p, 1, ..., 1]`` of total size n: ``(p+1) C(2n-p, n-p) / (n+1)``."""
    if not 1 <= p < n:
        raise DomainError(f"need 1 <= p < n, got p={p}, n={n}")
    return exact_div((p + 1) * binom(2 * n - p, n - p), n + 1)


def op123_one_big_block_sum(p: int, n: int) -> int:
    """Summation form: insert p-1 elements above the first entry of a permutation."""
    if not 1 <= p < n:
        raise DomainError(f"need 1 <= p < n, got p={p}, n={n}")
    m = n - (p - 1)
    return sum(binom(n - i, p - 1) * catalan_triangle_entry(m, i) for i in range(1, m + 1))


def op123_two_then_ones(n: int) -> int:
    """Shape ``[2, 1, ..., 1]``: ``3 (n-1) C(2n-2, n-1) / (n (n+1))``."""
    if n < 2:
        raise DomainError("need n >= 2")
    return exact_div(3 * (n - 1) * binom(2 * n - 2, n - 1), n * (n + 1))


def op123_nk_one_block_p(n: int, p: int) -> int:
    """123-avoiders with one block of size ``p`` and ``n - p`` singletons, any position.

    Only defined for ``p >= 2``: with ``p = 1`` no block is distinguished and
    the expression ``n * C_n`` overcounts.
    """
    if not 2 <= p < n:
        raise DomainError(f"need 2 <= p < n, got p={p}, n={n}")
    return exact_div((n - p + 1) * (p + 1) * binom(2 * n - p, n - p), n + 1)
