"""Exception types raised across the package."""


class ParameterError(ValueError):
    """Parameters outside the regime an operation supports."""


class GraphFormatError(ValueError):
    """Malformed graph or coloring file."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class StructuralError(ValueError):
    """Inputs that are dimensionally or structurally inconsistent with a graph."""


class RoundLimitExceeded(RuntimeError):
    """A synchronous run hit ``max_rounds`` with nodes still active.

    The partial trace is kept on ``trace`` for inspection.
    """

    def __init__(self, message, trace=None, audit=None):
        super().__init__(message)
        self.trace = trace
        self.audit = audit


class Contradiction(RuntimeError):
    """An invariant guaranteed by the analysis failed; indicates a bug."""


class SizeCapExceeded(ValueError):
    """A configuration graph would exceed the configured vertex cap."""


class BudgetExceeded(RuntimeError):
    """The exact oracle ran out of node expansions before reaching a verdict."""

    def __init__(self, message, expansions=0):
        super().__init__(message)
        self.expansions = expansions
