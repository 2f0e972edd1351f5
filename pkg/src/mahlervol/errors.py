"""Exception hierarchy shared by all modules."""


class MahlerError(Exception):
    """Base class for every error raised by this package."""


class DomainError(MahlerError, ValueError):
    """Input outside the mathematical domain of an operation."""


class AccuracyError(MahlerError):
    """A numerical tolerance could not be reached.

    ``estimate`` is the best value obtained and ``bound`` its error estimate.
    """

    def __init__(self, message, estimate=None, bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.bound = bound


class ResolutionError(MahlerError):
    """A parameter sweep was too coarse to separate neighbouring events."""


class CertificationError(MahlerError):
    """A constructed object failed its own consistency certificate."""


class ConsistencyError(MahlerError):
    """Two inputs that must describe the same object disagree."""


class MalformedPolygonError(DomainError):
    """A polygon whose angles admit no root of Q."""
