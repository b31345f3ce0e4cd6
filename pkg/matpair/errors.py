# matpair/errors.py
"""
Exception hierarchy shared by all packages.

Every error is a ValueError so callers that only know the generic
contract ("bad input raises ValueError") keep working.
"""


class CMSpaceError(ValueError):
    """Base class for all cm_spaces errors."""


class NotAMemberError(CMSpaceError):
    """The pair violates rank([X,Y] + id) = 1."""


class SingularConjugatorError(CMSpaceError):
    """A conjugating matrix is (numerically) singular."""


class EigenvalueCollisionError(CMSpaceError):
    """Wilson chart coordinates with colliding lambdas."""


class SamplingExhaustedError(CMSpaceError):
    """Too many rejected draws while sampling."""


class NonUnimodularError(CMSpaceError):
    """An SL2 step whose matrix does not have determinant one."""


class NotInvariantError(CMSpaceError):
    """Shear precondition Theta(f) = 0 failed."""


class NotDegreeOneError(CMSpaceError):
    """Overshear precondition Theta^2(f) = 0, Theta(f) != 0 failed."""


class UnknownFunctionError(CMSpaceError):
    """A function spec names something outside the catalog."""


class OffVarietyError(CMSpaceError):
    """C2 coordinates that do not satisfy the defining constraint."""


class VanishingCoordinateError(CMSpaceError):
    """x21 = 0, where the C2 generator w is undefined."""


class SizeMismatchError(CMSpaceError):
    """Operands of different matrix size, or the wrong size for an operation."""


class ChartError(CMSpaceError):
    """A pair that cannot be expressed in Wilson chart coordinates."""


class SchemaError(CMSpaceError):
    """Malformed JSON document."""


class ProgramStepError(CMSpaceError):
    """A step of an automorphism program failed."""

    def __init__(self, index: int, cause: Exception):
        self.index = index
        self.cause = cause
        super().__init__(f"step {index} failed: {cause}")
