"""Exception types shared across the package."""


class RobinShellError(Exception):
    """Base class for all errors raised by robinshell."""


class DomainError(RobinShellError, ValueError):
    """An argument lies outside the domain of the operation."""


class InvalidParameterError(RobinShellError, ValueError):
    """A parameter combination is not supported by the operation."""


class ConvergenceError(RobinShellError, RuntimeError):
    """An iterative or adaptive procedure failed to meet its tolerance."""


class NotFoundError(ConvergenceError):
    """A requested root or bracket was not located within the search limits."""


class DegenerateError(RobinShellError, ValueError):
    """A quotient's denominator vanishes."""


class AmbiguousClassificationError(RobinShellError):
    """A sign pattern could not be classified unambiguously."""


class CrossValidationError(RobinShellError):
    """Two independent routes to the same quantity disagree."""


class MeasureMismatchError(RobinShellError, ValueError):
    """A perturbed domain does not have the measure of its reference shell."""
