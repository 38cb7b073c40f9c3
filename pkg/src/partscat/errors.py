"""Exception hierarchy shared by every module of the package."""


class PartScatError(Exception):
    """Base class for all errors raised by partscat."""


class NonPrime(PartScatError, ValueError):
    pass


class ReducibleModulus(PartScatError, ValueError):
    pass


class NoGeneratorFound(PartScatError, RuntimeError):
    pass


class CtxMismatch(PartScatError, TypeError):
    """Operands live in different field contexts."""


class DivisionByZero(PartScatError, ZeroDivisionError):
    pass


class NotDivisor(PartScatError, ValueError):
    pass


class WrongLength(PartScatError, ValueError):
    pass


class NotSubfield(PartScatError, ValueError):
    pass


class NoRootFound(PartScatError, RuntimeError):
    pass


class ZeroRho(PartScatError, ValueError):
    pass


class BaseMismatch(PartScatError, ValueError):
    pass


class ZeroPolynomial(PartScatError, ValueError):
    pass


class BudgetExceeded(PartScatError, RuntimeError):
    """A computation would exceed its configured enumeration budget."""


class HypothesisNotMet(PartScatError, ValueError):
    pass


class GcdViolation(PartScatError, ValueError):
    pass


class ZeroVector(PartScatError, ValueError):
    pass


class EvenN(PartScatError, ValueError):
    pass


class ExponentRange(PartScatError, ValueError):
    pass


class WrongTower(PartScatError, ValueError):
    pass


class TowerMismatch(PartScatError, ValueError):
    pass


class NotPrimitive(PartScatError, ValueError):
    pass


class NotBasis(PartScatError, ValueError):
    pass


class PhiNotRPartial(PartScatError, ValueError):
    pass


class NotInvertible(PartScatError, ValueError):
    pass


class SmallT(PartScatError, ValueError):
    pass


class ParseError(PartScatError, ValueError):
    """Malformed text form of a field, element, polynomial or family."""
