"""Exception taxonomy.

The CLI maps these onto exit codes: domain/configuration problems exit
with 2, numerical failures with 3, verification failures with 4.
"""


class WashburnError(Exception):
    """Base class for all package-specific errors."""


class DomainError(WashburnError, ValueError):
    """An input violates a documented precondition."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class HorizonError(DomainError):
    """Requested integration horizon exceeds the hard cap."""

    def __init__(self, message: str):
        super().__init__("horizon", message)


class ConsistencyError(WashburnError):
    """Two redundant internal computations disagree (an internal bug)."""


class NumericError(WashburnError):
    """A numerical procedure failed to produce a trustworthy result."""


class SingularityError(NumericError):
    """The height-form right-hand side was evaluated too close to H = 0."""


class StepSizeUnderflowError(NumericError):
    """Adaptive step control drove the step below machine resolution."""


class ConvergenceError(NumericError):
    """An iteration failed to reach its tolerance within the budget."""

    def __init__(self, iterations: int, last_diff: float):
        self.iterations = iterations
        self.last_diff = last_diff
        super().__init__(
            f"no convergence after {iterations} iterations "
            f"(last sup-norm difference {last_diff:.3e})"
        )


class InconclusiveError(NumericError):
    """Trajectory evidence does not support a clean classification."""
