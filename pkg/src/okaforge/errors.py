"""Exception hierarchy shared by every okaforge module."""


class OkaforgeError(Exception):
    """Base class for all package errors."""


class InvalidParameter(OkaforgeError, ValueError):
    pass


class DegenerateInput(OkaforgeError, ValueError):
    """Resultant requested for an input with no positive degree in y."""


class ShapeError(OkaforgeError, ValueError):
    pass


class InvalidDomain(OkaforgeError, ValueError):
    pass


class InvalidSecondComponent(OkaforgeError, ValueError):
    """The C*-component has a zero or pole inside the domain."""


class WrongBranch(OkaforgeError, ValueError):
    pass


class SearchExhausted(OkaforgeError, RuntimeError):
    def __init__(self, message, log=None):
        super().__init__(message)
        self.log = log


class PrecisionExhausted(OkaforgeError, RuntimeError):
    pass


class AmbiguousRoot(OkaforgeError, RuntimeError):
    pass


class AmbiguousFiber(OkaforgeError, RuntimeError):
    pass


class AmbiguousBoundary(OkaforgeError, RuntimeError):
    pass


class InternalInconsistency(OkaforgeError, RuntimeError):
    pass


class ShiftTooLarge(OkaforgeError, ValueError):
    pass


class PreconditionError(OkaforgeError, ValueError):
    pass


class ParseError(OkaforgeError, ValueError):
    pass
