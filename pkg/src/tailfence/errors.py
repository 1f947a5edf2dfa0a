"""Exception hierarchy shared by every module."""


class TailFenceError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(TailFenceError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class InsufficientDataError(DomainError):
    """The sample is too small for the requested statistic."""


class EstimatorUndefined(DomainError):
    """A tail-index estimator's precondition failed on the given statistics.

    ``reason`` is a short, stable string suitable for tallying.
    """

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class DistSpecError(DomainError):
    """A distribution specification string could not be parsed."""


class SampleFormatError(TailFenceError):
    """A sample file contains a non-numeric or otherwise unusable row."""
