"""Exception hierarchy shared by every module of the package."""


class ArithmeticGeometryError(Exception):
    """Base class for all errors raised by this package."""


class NotMonic(ArithmeticGeometryError, ValueError):
    pass


class ReducibleDetected(ArithmeticGeometryError, ValueError):
    pass


class FieldMismatch(ArithmeticGeometryError, TypeError):
    pass


class DivisionByZero(ArithmeticGeometryError, ZeroDivisionError):
    pass


class NotASquare(ArithmeticGeometryError, ValueError):
    """site, when set, is a degree-one prime where the element is a non-residue."""

    def __init__(self, message: str, site=None):
        super().__init__(message)
        self.site = site


class BadReduction(ArithmeticGeometryError, ValueError):
    pass


class SingularQuartic(ArithmeticGeometryError, ValueError):
    pass


class SingularCurve(ArithmeticGeometryError, ValueError):
    pass


class PointNotOnCurve(ArithmeticGeometryError, ValueError):
    pass


class BadSite(ArithmeticGeometryError, ValueError):
    pass


class TorsionDetected(ArithmeticGeometryError):
    """Raised when n*P is the identity for some n within the bound."""

    def __init__(self, n: int):
        super().__init__(f"point has finite order dividing {n}")
        self.n = n


class BranchLocus(ArithmeticGeometryError, ValueError):
    pass


class ZeroTwist(ArithmeticGeometryError, ValueError):
    pass


class DegreeMismatch(ArithmeticGeometryError, ValueError):
    pass


class SqrtBudgetExceeded(ArithmeticGeometryError):
    pass
