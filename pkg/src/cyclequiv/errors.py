"""Exception types raised across the package."""


class CyclequivError(ValueError):
    """Base class for every error raised by this package."""


class NotPrime(CyclequivError):
    pass


class ReducibleModulus(CyclequivError):
    pass


class DegreeMismatch(CyclequivError):
    pass


class ZeroInverse(CyclequivError, ZeroDivisionError):
    pass


class FieldMismatch(CyclequivError):
    pass


class DivisionByZeroPoly(CyclequivError, ZeroDivisionError):
    pass


class BothZero(CyclequivError):
    pass


class LengthMismatch(CyclequivError):
    pass


class NotCoprime(CyclequivError):
    """gcd(n, q) != 1: the group algebra is not semisimple."""


class NotSemisimple(NotCoprime):
    pass


class NotACoset(CyclequivError):
    pass


class NotADivisor(CyclequivError):
    pass


class TooManyCodes(CyclequivError):
    pass


class NotAUnit(CyclequivError):
    pass


class CapExceeded(CyclequivError):
    pass


class PreconditionFailed(CyclequivError):
    """The inputs make a theorem check vacuous; not a theorem failure."""


class NotASubgroup(CyclequivError):
    pass


class NotAnElement(CyclequivError):
    pass


class NotInvariant(CyclequivError):
    pass


class SolverInconsistent(CyclequivError):
    """Raised only if an internal linear solve contradicts its preconditions."""


class GroupMismatch(CyclequivError):
    pass
