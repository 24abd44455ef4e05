"""Exception hierarchy shared by every module."""


class SandpileError(ValueError):
    """Base class for validation failures."""


class GraphFormatError(SandpileError):
    """Malformed graph or matrix file."""


class PreconditionError(SandpileError):
    """An operation was called on input outside its domain."""


class CapExceeded(SandpileError):
    """A configured enumeration bound would be exceeded."""


class HomogenizationError(PreconditionError):
    """The sink column is not in the span of the nonsink Laplacian columns."""
