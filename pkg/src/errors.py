"""Exception hierarchy shared by every module.

Each class carries the process exit code the CLI reports when the error
escapes a command: 2 not associative, 3 bad input, 4 unsupported prime.
"""


class RotaBaxterError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 3


class DivisionByZeroError(RotaBaxterError, ZeroDivisionError):
    """Division or inversion by a zero scalar."""


class ModulusMismatchError(RotaBaxterError):
    """Prime-field operands with different moduli."""


class ClosureViolationError(RotaBaxterError):
    """Cayley table entry outside 1..n."""


class NotAssociativeError(RotaBaxterError):
    exit_code = 2


class OrderMismatchError(RotaBaxterError):
    """Two tables of different order compared."""


class UnsupportedOrderError(RotaBaxterError):
    """Enumeration or exhaustion requested beyond order 3."""


class UnsupportedPrimeError(RotaBaxterError):
    exit_code = 4


class UnknownSemigroupError(RotaBaxterError):
    """Semigroup id not present in the catalog."""


class FieldMismatchError(RotaBaxterError):
    """Polynomials from different rings or coefficient fields combined."""


class UnboundVariableError(RotaBaxterError):
    """A variable without a binding during substitution or evaluation."""


class DimensionMismatchError(RotaBaxterError):
    """Operator matrix order differs from the semigroup order."""


class UnsupportedFormatError(RotaBaxterError):
    """Export format not one of text, json, latex, cas."""


class BadInputError(RotaBaxterError):
    """User-supplied file or selector could not be used."""


class FamilyFormatError(BadInputError):
    """Family record violates the well-formedness rules."""
