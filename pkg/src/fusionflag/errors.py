class FusionFlagError(Exception):
    """Base class for errors raised by this package."""


class DomainError(FusionFlagError, ValueError):
    """An argument lies outside the domain of an operation."""


class ParameterError(FusionFlagError, ValueError):
    """Invalid family or evaluation parameters."""


class ConsistencyError(FusionFlagError, RuntimeError):
    """An internal invariant failed; indicates a bug, not a user error."""
