"""Exception hierarchy shared by every module of the package."""


class WeilrelError(Exception):
    """Base class for all package errors."""


class InvalidInput(WeilrelError, ValueError):
    pass


class NotPrime(InvalidInput):
    pass


class EvenCharacteristic(InvalidInput):
    pass


class TooLarge(WeilrelError):
    """A requested enumeration or group computation exceeds a configured cap."""


class ZeroPolynomial(InvalidInput):
    pass


class DependentRows(InvalidInput):
    pass


class SingularCurve(InvalidInput):
    pass


class NonIntegralCoefficient(WeilrelError, ArithmeticError):
    pass


class OddDegree(InvalidInput):
    pass


class NotSymplectic(InvalidInput):
    pass


class PrecisionExhausted(WeilrelError, ArithmeticError):
    pass


class NotSeparable(InvalidInput):
    pass


class SharedRoots(InvalidInput):
    pass


class NotCongruent(InvalidInput):
    pass


class WeilBoundViolated(InvalidInput):
    pass


class TooSmall(InvalidInput):
    pass


class BadOrder(InvalidInput):
    pass


class BadCongruence(InvalidInput):
    pass


class MismatchedField(InvalidInput):
    pass


class EmptySequence(InvalidInput):
    pass


class UnknownMethod(InvalidInput):
    pass


class ConfigInvalid(InvalidInput):
    pass


class CapExceeded(TooLarge):
    pass


class InvariantViolation(WeilrelError, AssertionError):
    """An internal consistency check failed; this indicates a bug."""
