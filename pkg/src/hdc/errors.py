"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class FieldMismatchError(DomainError):
    """Two irrational quadratic numbers live in different fields Q(sqrt(d))."""


class ResourceLimitError(ValueError):
    """The request exceeds a documented computational limit."""


class RangeWarning(RuntimeWarning):
    """A log-domain value could not be represented as a plain float."""
