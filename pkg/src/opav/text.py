"""Text forms used on the command line.

Partitions: blocks separated by ``/``, elements by ``,``, an empty block is
``-``; e.g. ``2,4/1/3`` or ``8/-/3,5,9/1,2/-/4,6/7``. Serialization is
``str(partition)``. Comma-free input such as ``59/38/1267/4`` is also
accepted when every element is a single digit.
"""
from __future__ import annotations

from typing import Sequence

from .core import OrderedSetPartition, Pattern
from .errors import DomainError


def _ints(token: str, digits: bool) -> tuple[int, ...]:
    if token == "-":
        return ()
    if not token:
        raise DomainError("empty block token; write '-' for an empty block")
    parts = list(token) if digits else token.split(",")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise DomainError(f"bad block {token!r}") from None


def parse_partition(text: str) -> OrderedSetPartition:
    text = text.strip()
    if not text or any(c.isspace() for c in text):
        raise DomainError(f"bad partition text {text!r}")
    tokens = text.split("/")
    star = "-" in tokens
    if "," in text:
        blocks = [_ints(t, digits=False) for t in tokens]
        return OrderedSetPartition(tuple(blocks), allow_empty=star)
    # comma-free: digit-per-element, unless only the integer reading is valid
    errors = []
    for digits in (True, False):
        try:
            blocks = [_ints(t, digits=digits) for t in tokens]
            return OrderedSetPartition(tuple(blocks), allow_empty=star)
        except DomainError as exc:
            errors.append(exc)
    raise errors[0]


def parse_pattern(text: str) -> Pattern:
    return Pattern.of(text)


def parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    try:
        if "," in text:
            return tuple(int(t) for t in text.split(","))
        if not text.isdigit():
            raise ValueError
        return tuple(int(c) for c in text)
    except ValueError:
        raise DomainError(f"bad word {text!r}") from None


def format_word(w: Sequence[int]) -> str:
    if all(0 <= x <= 9 for x in w):
        return "".join(map(str, w))
    return ",".join(map(str, w))


def parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise DomainError(f"expected comma-separated integers, got {text!r}") from None
