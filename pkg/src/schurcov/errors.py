"""Exception hierarchy.

Every error raised by the library derives from :class:`SchurCovError`, which
itself is a ``ValueError`` so callers that only care about bad input can catch
that.
"""


class SchurCovError(ValueError):
    """Base class for all library errors."""


class NonFinite(SchurCovError):
    pass


class NotSymmetric(SchurCovError):
    pass


class NotPSD(SchurCovError):
    pass


class NotPD(NotPSD):
    pass


class BadIndexSet(SchurCovError):
    pass


class NotBonaFide(SchurCovError):
    """The matrix violates the uncertainty relation ``V + iΩ >= 0``."""


class NumericalFailure(SchurCovError):
    pass


class UnknownParty(SchurCovError):
    pass


class LabelClash(SchurCovError):
    pass


class DimensionMismatch(SchurCovError):
    pass


class BadAlpha(SchurCovError):
    pass


class UnknownCheck(SchurCovError):
    pass
