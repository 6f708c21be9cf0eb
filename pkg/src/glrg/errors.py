"""Exception types shared across the package."""


class PoleError(ArithmeticError):
    """Raised when an argument lands on (or within the pole window of) a pole."""

    def __init__(self, function, location, message=None):
        self.function = function
        self.location = float(location)
        super().__init__(message or f"{function} has a pole at {location!r}")


class DomainError(ValueError):
    """Argument outside the validity window of an operation."""

    def __init__(self, message, window=None):
        self.window = window
        super().__init__(message)


class DivergenceError(DomainError):
    """A defining integral diverges (the infrared/Peierls regime)."""


class ConvergenceError(ArithmeticError):
    """A lattice sum is requested outside its region of convergence."""


class BudgetExceededError(ArithmeticError):
    """Truncation budget exhausted before the requested tolerance was met."""


class FlowBlowUpError(ArithmeticError):
    """The coupling left the bounded region while integrating the flow."""

    def __init__(self, message, t=None, g=None):
        self.t = t
        self.g = g
        super().__init__(message)
