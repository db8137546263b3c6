"""Exception types shared across the package."""


class H10Error(Exception):
    """Base class for every error raised by h10ff."""


class ZeroDenominator(H10Error, ZeroDivisionError):
    pass


class DivisionByZero(H10Error, ZeroDivisionError):
    pass


class DegenerateExtension(H10Error):
    """a^2 - b^2 D vanished: the quadratic extension data is not a field."""


class NotASquareConstantTerm(H10Error):
    pass


class PrecisionExhausted(H10Error):
    pass


class PointNotOnCurve(H10Error):
    pass


class NotInImage(H10Error):
    pass


class TorsionDegenerate(H10Error):
    pass


class DegenerateForm(H10Error):
    pass


class DegenerateShift(H10Error):
    pass


class DegenerateCombination(H10Error):
    pass


class ZeroElement(H10Error):
    pass


class ScaleExceeded(H10Error):
    pass


class CapExceeded(H10Error):
    pass


class PolySyntaxError(H10Error, SyntaxError):
    """Malformed polynomial text; ``position`` is the 0-based offset."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} at position {position}")
        self.position = position


class NonIntegerCoefficient(H10Error):
    pass


class WitnessSchemaError(H10Error):
    pass
