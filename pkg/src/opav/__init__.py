"""Exact counting of pattern-avoiding ordered set partitions."""
from . import _backend
from .core import (
    OrderedSetPartition,
    Pattern,
    avoids,
    contains_pattern,
    count_by_enumeration,
    count_nk_by_enumeration,
    count_words_avoiding,
    enumerate_partitions,
    enumerate_partitions_nk,
    enumerate_partitions_star,
)
from .errors import (
    BudgetExceededError,
    CapacityError,
    DomainError,
    InexactDivisionError,
    MalformedEncodingError,
    OpavError,
    PreconditionError,
)
from .scheme import op123_nk, scheme_count
from .text import parse_partition

__version__ = "0.1.0"


def backend_name() -> str:
    """Name of the active kernel implementation: ``"cython"`` or ``"python"``."""
    return _backend.kernels.NAME


__all__ = [
    "BudgetExceededError",
    "CapacityError",
    "DomainError",
    "InexactDivisionError",
    "MalformedEncodingError",
    "OpavError",
    "OrderedSetPartition",
    "Pattern",
    "PreconditionError",
    "avoids",
    "backend_name",
    "contains_pattern",
    "count_by_enumeration",
    "count_nk_by_enumeration",
    "count_words_avoiding",
    "enumerate_partitions",
    "enumerate_partitions_nk",
    "enumerate_partitions_star",
    "op123_nk",
    "parse_partition",
    "scheme_count",
]
