"""Exception hierarchy shared by every module."""


class XlineError(Exception):
    """Base class for all library errors."""


class NonPrimeError(XlineError, ValueError):
    pass


class EvenCharacteristicError(XlineError, ValueError):
    pass


class ReducibleModulusError(XlineError, ValueError):
    pass


class ZeroArgumentError(XlineError, ValueError):
    pass


class DivisionByZeroError(XlineError, ZeroDivisionError):
    pass


class DimensionTooSmallError(XlineError, ValueError):
    pass


class SingularMatrixError(XlineError, ValueError):
    pass


class SizeMismatchError(XlineError, ValueError):
    pass


class GroupTooLargeError(XlineError):
    pass


class BoundExceededError(XlineError):
    pass


class NotTwoTransitiveError(XlineError):
    pass


class DegenerateSpectrumError(XlineError, ValueError):
    pass


class NonIntegerMultiplicityError(XlineError, ValueError):
    pass


class InconsistentSpectrumError(XlineError, ValueError):
    pass


class WrongResidueClassError(XlineError, ValueError):
    pass


class TooLargeError(XlineError):
    pass


class ParseError(XlineError, ValueError):
    pass
