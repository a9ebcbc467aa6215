"""Exception hierarchy shared by every module of the package."""


class MomentCruncherError(Exception):
    """Base class for all package errors."""


class NotAUnit(MomentCruncherError, ArithmeticError):
    """A truncated series with zero constant term was inverted."""


class ExactDivisionError(MomentCruncherError, ArithmeticError):
    """A Laurent polynomial division left a nonzero remainder."""


class DegenerateWeight(MomentCruncherError):
    pass


class NotADistribution(MomentCruncherError):
    pass


class ExpansionError(MomentCruncherError):
    pass


class UnknownFamily(MomentCruncherError, LookupError):
    pass


class DegenerateVariance(MomentCruncherError):
    pass


class OrderTooLow(MomentCruncherError):
    pass


class NotReduced(MomentCruncherError, ValueError):
    pass


class SingularSystem(MomentCruncherError):
    pass


class NoFit(MomentCruncherError):
    pass


class NotEnoughPoints(MomentCruncherError, ValueError):
    pass


class NotIndependentlyNormal(MomentCruncherError):
    def __init__(self, message, correlation_limit=None):
        super().__init__(message)
        self.correlation_limit = correlation_limit


class BudgetExceeded(MomentCruncherError):
    pass


class ExpressionSyntaxError(MomentCruncherError, ValueError):
    """Parse failure at a byte offset, with the set of tokens that would have been accepted."""

    def __init__(self, position, expected, text=""):
        self.position = position
        self.expected = tuple(sorted(expected))
        self.text = text
        super().__init__(f"syntax error at offset {position}: expected one of {', '.join(self.expected)}")


class InadmissibleDenominator(NotAUnit):
    """Denominator vanishes at s = 0 or at markers = 1."""


class NonRationalStructure(MomentCruncherError, ValueError):
    pass
