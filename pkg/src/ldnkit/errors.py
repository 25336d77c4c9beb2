"""Exception types shared across the package."""


class LdnkitError(Exception):
    """Base class for all package-specific errors."""


class SingularMatrixError(LdnkitError):
    """A pivot fell below the relative singularity threshold during LU."""


class RankDeficientError(LdnkitError):
    """A row-rank check failed (Gram matrix of the rows is singular)."""


class IllConditionedError(LdnkitError):
    """A linear solve was refused because its condition estimate is too large.

    The offending estimate is stored in ``condition``.
    """

    def __init__(self, message: str, condition: float):
        super().__init__(f"{message} (condition estimate {condition:.3e})")
        self.condition = condition


class GenerationFailedError(LdnkitError):
    """Random basis generation exhausted its retry budget."""


class IncompatibleStepError(LdnkitError):
    """The sample period does not divide the window length."""


class NonUniformSignalError(LdnkitError):
    """A signal's time column is not uniformly spaced."""


class FormatError(LdnkitError):
    """A document, CSV file, or basis file could not be parsed."""
