"""
Exceptions raised by the adapted-basis library.

Every input error is a `ValueError`, so callers that only care about bad
arguments can keep catching `ValueError`.
"""


class AdaptedBasisError(ValueError):
    """Base class for invalid input to any adapted-basis operation."""


class NotPrime(AdaptedBasisError):
    pass


class RotationSumNonzero(AdaptedBasisError):
    pass


class GenusTooSmall(AdaptedBasisError):
    pass


class InvalidT(AdaptedBasisError):
    pass


class OutOfRange(AdaptedBasisError):
    pass


class BadExponent(AdaptedBasisError):
    pass


class BadT(AdaptedBasisError):
    pass


class NotInKernel(AdaptedBasisError):
    pass


class MalformedInput(AdaptedBasisError):
    pass


class NotEvenlyWorded(AdaptedBasisError):
    pass


class ContextMismatch(AdaptedBasisError):
    pass


class OddQ(AdaptedBasisError):
    pass


class NotSkew(AdaptedBasisError):
    pass


class NotUnimodular(AdaptedBasisError):
    pass


class OddDimension(AdaptedBasisError):
    pass


class DimensionMismatch(AdaptedBasisError):
    pass


class InvariantViolation(RuntimeError):
    """
    An identity that must hold for every valid input did not hold.

    This signals a bug in the library, not bad input.
    """
