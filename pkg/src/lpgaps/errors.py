"""Shared exception types."""


class ValidationError(ValueError):
    """An input violates a documented precondition or invariant."""


class BudgetExceededError(RuntimeError):
    """A computation was refused because it exceeds its resource budget.

    Raised instead of silently approximating: exponential cost is
    reported honestly, never hidden.
    """
