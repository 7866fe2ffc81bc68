"""Exception hierarchy shared by every module."""


class IwalinkError(Exception):
    """Base class for all errors raised by this package."""


class ZeroPolynomial(IwalinkError, ValueError):
    pass


class DimensionMismatch(IwalinkError, ValueError):
    pass


class BothZero(IwalinkError, ValueError):
    pass


class NotDivisible(IwalinkError, ArithmeticError):
    pass


class ZeroDivisor(IwalinkError, ZeroDivisionError):
    pass


class ScaleExceeded(IwalinkError, ValueError):
    pass


class InsufficientSamples(IwalinkError, ValueError):
    pass


class NoStableFit(IwalinkError, ValueError):
    pass


class VanishesOnTorus(IwalinkError, ArithmeticError):
    pass


class MismatchMuLambda(IwalinkError, AssertionError):
    """Structural and fitted invariants disagree."""


class SurjectivityFailure(IwalinkError, ValueError):
    pass


class MissingSublink(IwalinkError, KeyError):
    pass


class MissingLinkingNumbers(IwalinkError, ValueError):
    pass


class PrecisionError(IwalinkError, ValueError):
    """A p-adic entry was used at a level beyond its declared precision."""


class NotStabilized(IwalinkError, ValueError):
    pass


class IndexOutOfRange(IwalinkError, ValueError):
    pass


class UnknownName(IwalinkError, KeyError):
    pass


class ParseError(IwalinkError, ValueError):
    def __init__(self, message, *, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class UnsupportedBase(IwalinkError, ValueError):
    """Only integral homology sphere bases have exact order formulas."""
