"""Exception types raised by :mod:`scepticalp`."""


class ScepticalError(Exception):
    """Base class for all package errors."""


class DomainError(ScepticalError, ValueError):
    """An argument lies outside the domain of the function."""


class NotSignificantError(ScepticalError, ValueError):
    """The original study is not significant at the requested level.

    No sufficiently sceptical prior exists in that case, so neither the
    prior variance nor Box's tail probability can be computed.
    """


class NotAchievableError(ScepticalError, ValueError):
    """Replication success cannot be reached for any replication result."""


class InvalidRowError(ScepticalError, ValueError):
    """A dataset row violates the input invariants."""

    def __init__(self, study_id, reason):
        super().__init__(f"{study_id}: {reason}")
        self.study_id = study_id
        self.reason = reason
