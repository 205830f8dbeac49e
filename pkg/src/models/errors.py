from typing import List, Optional


class FairSliceError(Exception):
    """Root of every error raised by the library."""


class InvalidInputError(FairSliceError):
    """Malformed input; the CLI maps it to exit status 2."""


class InvalidInstanceError(InvalidInputError):
    pass


class OutOfRangeError(InvalidInputError):
    pass


class InvalidDivisionError(InvalidInputError):
    def __init__(self, violations: List[str], message: Optional[str] = None):
        self.violations = list(violations)
        super().__init__(message or "; ".join(self.violations))


class NotEnoughValue(FairSliceError):
    """inv_eval: the rest of the cake is worth less than the requested value."""


class ResourceGuardExceeded(FairSliceError):
    """A size guard tripped; the CLI maps it to exit status 3."""
