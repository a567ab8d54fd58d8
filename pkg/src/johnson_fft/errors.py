"""Exception types shared across the package."""


class ConstructionError(RuntimeError):
    """A factor could not be built (numerical drift or a degenerate pivot)."""


class InvariantError(RuntimeError):
    """Internal bookkeeping disagreed with itself, e.g. a block key group is incomplete."""


class ResourceBudgetError(RuntimeError):
    """The requested dimension exceeds the configured budget."""


class OracleError(RuntimeError):
    """The dense oracle could not produce an unambiguous answer."""


class PlanFormatError(ValueError):
    """A plan or data file is malformed. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ConvergenceError(ArithmeticError):
    """An iterative eigensolver did not converge in its sweep budget."""
