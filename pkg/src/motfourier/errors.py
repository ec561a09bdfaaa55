"""Exception hierarchy shared by every engine module."""


class MotFourierError(Exception):
    """Base class for all engine errors."""


class NonMonomial(MotFourierError):
    pass


class DivideByZero(MotFourierError):
    pass


class OutsideModel(MotFourierError):
    """Input is not a finite series over the Gaussian rationals."""


class BadReduction(OutsideModel):
    """A leading coefficient vanishes mod p, so valuations do not specialize."""


class NotCenteredAtZero(MotFourierError):
    pass


class NotIntegrable(MotFourierError):
    pass


class UnsupportedPhase(MotFourierError):
    pass


class NotSchwartz(MotFourierError):
    pass


class NotBounded(MotFourierError):
    pass


class NotHInvariant(MotFourierError):
    pass


class HypothesisFailed(MotFourierError):
    pass


class Unsupported(MotFourierError):
    pass


class NotAlmostIntegrable(MotFourierError):
    pass


class UnboundedBothFactors(MotFourierError):
    pass


class UnboundedSupport(MotFourierError):
    pass


class ZeroPolynomial(MotFourierError):
    pass


class CannotSplit(MotFourierError):
    pass


class NonSquare(MotFourierError):
    pass


class NonIntegralGamma(MotFourierError):
    pass


class InsufficientLevel(MotFourierError):
    pass


class Mismatch(MotFourierError):
    pass


class ArityMismatch(MotFourierError):
    pass


class UndefinedName(MotFourierError):
    pass


class DSLSyntaxError(MotFourierError):
    """Parse failure carrying a 1-based line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")
