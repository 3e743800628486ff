"""Exception hierarchy for tmat.

Every domain error raised by the library derives from TmatError so callers
(and the CLI) can distinguish domain failures from programming errors.
"""


class TmatError(Exception):
    """Base class for all tmat domain errors."""


class ParameterError(TmatError, ValueError):
    """Invalid constructor parameters (bad dimension, constraint violation, unknown name)."""


class UnknownFamilyError(TmatError, KeyError):
    def __init__(self, family_id):
        super().__init__(f"unknown matrix family '{family_id}'")
        self.family_id = family_id


class DuplicateFamilyError(TmatError):
    pass


class UnknownPropertyError(TmatError, ValueError):
    pass


class BoundsError(TmatError, IndexError):
    pass


class RationalOverflowError(TmatError, OverflowError):
    """A rational result does not fit in a signed 64-bit numerator/denominator."""


class SingularMatrixError(TmatError):
    pass


class UnsupportedOperationError(TmatError):
    pass


class ConvergenceError(TmatError):
    pass


class GroupError(TmatError):
    pass


class MatrixMarketError(TmatError, ValueError):
    pass


class HarnessError(TmatError):
    pass
