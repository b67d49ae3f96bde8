"""Exception types shared across the package."""


class UsageError(ValueError):
    """Arguments outside the documented domain (bad N, l, m, rows, names)."""


class ContextMismatchError(ValueError):
    """Operands belong to different cyclotomic rings."""


class BudgetExceededError(RuntimeError):
    """Exact enumeration would exceed the configured budget."""

    def __init__(self, message: str, size: int, budget: int) -> None:
        super().__init__(message)
        self.size = size
        self.budget = budget
