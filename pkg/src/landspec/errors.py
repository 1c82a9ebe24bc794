"""Exception types shared across the solvers.

All errors raised on purpose by this package derive from ModelError so
callers can catch one base class. The CLI maps each subclass to a fixed
exit code.
"""

from __future__ import annotations


class ModelError(Exception):
    """Base class for all deliberate solver errors."""


class DomainError(ModelError):
    """A quantity left its mathematically admissible region.

    Examples: leverage denominator nonpositive, phi at or beyond its
    blow-up bound, a nonpositive money-price brace.
    """


class AssumptionViolated(ModelError):
    """A maintained assumption fails for the supplied parameters.

    Carries the offending assumption report(s) in ``reports``.
    """

    def __init__(self, message: str, reports=None):
        super().__init__(message)
        self.reports = list(reports) if reports is not None else []


class NoEquilibrium(ModelError):
    """No admissible balanced growth path exists for these parameters."""


class RootNotBracketed(ModelError):
    """A bracketed root search found no sign change on its interval."""


class ShootingFailed(ModelError):
    """No initial jump value produced a converging path."""


class RegionTooNarrow(ModelError):
    """No admissible finite-difference step width exists."""


class MissingParameter(ModelError):
    """An optional parameter is required by the requested operation."""
