"""Exception hierarchy shared by every module of the package."""


class ScalextError(Exception):
    """Base class for all library errors."""


class DivisionByZero(ScalextError, ZeroDivisionError):
    pass


class DescriptorMismatch(ScalextError, TypeError):
    pass


class ZeroDenominator(ScalextError, ZeroDivisionError):
    pass


class PoleAtPoint(ScalextError, ZeroDivisionError):
    pass


class ParseError(ScalextError, ValueError):
    """Malformed textual input; carries an optional position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        elif column is not None:
            where = f" (column {column})"
        super().__init__(message + where)


class ShapeMismatch(ScalextError, ValueError):
    pass


class ZeroVector(ScalextError, ValueError):
    pass


class NotInFundamentalRegion(ScalextError, ValueError):
    pass


class DivisibleVector(ScalextError, ValueError):
    pass


class QuiverMismatch(ScalextError, ValueError):
    pass


class WeightNotOrthogonal(ScalextError, ValueError):
    pass


class BudgetExceeded(ScalextError, RuntimeError):
    pass


class NotFiniteField(ScalextError, TypeError):
    pass


class ArityBudgetExceeded(BudgetExceeded):
    pass


class NonCommutingOperators(ScalextError, ValueError):
    pass


class NotADerivation(ScalextError, ValueError):
    pass


class DegreeMismatch(ScalextError, ValueError):
    pass


class DefectAtLowerArity(ScalextError, ValueError):
    pass


class NotCohomologyMultiplicative(ScalextError, ValueError):
    pass


class ObstructionNonzero(ScalextError, RuntimeError):
    pass


class NoChainLevelLift(ScalextError, RuntimeError):
    pass


class AxiomViolation(ScalextError, ValueError):
    """An algebraic structure failed one of its defining identities."""
