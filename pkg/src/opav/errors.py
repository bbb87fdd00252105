"""Exception types raised across the package."""


class OpavError(Exception):
    """Base class for all package errors."""


class DomainError(OpavError, ValueError):
    """Argument outside the domain where a formula or map is defined."""


class PreconditionError(OpavError, ValueError):
    """Input violates a documented precondition (e.g. it contains a pattern)."""


class InexactDivisionError(OpavError, ArithmeticError):
    """An integer division that must be exact left a remainder."""


class BudgetExceededError(OpavError):
    """An exhaustive enumeration would generate more objects than allowed."""

    def __init__(self, needed, budget):
        self.needed = needed
        self.budget = budget
        super().__init__(
            f"enumeration needs {needed} objects, budget is {budget} "
            "(raise it with budget=... or OPAV_BUDGET)"
        )


class CapacityError(OpavError, ValueError):
    """Request exceeds a structural limit (word-size bitmasks, n < k, ...)."""


class MalformedEncodingError(OpavError, ValueError):
    """A star encoding is inconsistent with its compact partition."""
