"""Exception types shared across the toolkit."""


class PhasekitError(Exception):
    """Base class for all phasekit errors."""


class DimensionError(PhasekitError, ValueError):
    """Invalid dimension, period, or mismatched input sizes."""


class UnsupportedFieldError(PhasekitError):
    """Operation requires a real ensemble (or real signal) and got complex data."""


class SizeLimitError(PhasekitError):
    """Requested enumeration exceeds the configured subset-size cap."""


class DegeneratePivotError(PhasekitError):
    """Entry resolution hit a vanishing pivot or a real modulation ratio."""


class InconsistentDataError(PhasekitError):
    """Inputs are not a valid autocorrelation pair / intensity vector."""


class UnsupportedSignalError(PhasekitError):
    """Closed-form recovery needs a nonzero anchor entry and did not get one."""


class InvalidFamilyError(PhasekitError):
    """Reduction ensemble family is not full spark (or has the wrong shape)."""


class NumericalDegeneracyError(PhasekitError):
    """A linear system that is provably invertible came out singular."""
