"""Exception types shared across the package."""


class EntScaleError(Exception):
    """Base class for all package errors."""


class DomainError(EntScaleError, ValueError):
    """A parameter lies outside the mathematical domain of a formula."""


class CutoffViolation(DomainError):
    """A length was passed that is shorter than the short-distance cutoff."""


class IntervalSetError(EntScaleError, ValueError):
    """An interval collection is empty, unsorted, overlapping, or touching."""


class SingularPointError(EntScaleError, ValueError):
    """Evaluation requested at (or too close to) a singular point."""


class NonConformalPointError(SingularPointError):
    """A map has vanishing derivative where conformality is required."""


class ResourceLimitError(EntScaleError, RuntimeError):
    """A solver was asked for a system size beyond its hard guard."""


class SolverConsistencyError(EntScaleError, RuntimeError):
    """An internal consistency check of a solver failed (likely a bug upstream)."""


class ZeroModeError(DomainError):
    """The oscillator chain was requested at a mass where the zero mode diverges."""


class InsufficientDataError(EntScaleError, ValueError):
    """Too few data points for the requested fit."""


class SchemaError(EntScaleError, ValueError):
    """A result table does not match the supported schema."""
