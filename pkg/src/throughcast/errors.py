"""Exception hierarchy.

Every error raised by the engine derives from :class:`ThroughcastError`.
``DataError`` covers bad or insufficient input, ``NumericalError`` covers
failures of an estimation or training procedure. The CLI maps the two
families to distinct exit codes.
"""


class ThroughcastError(Exception):
    """Base class for all engine errors."""


class DataError(ThroughcastError, ValueError):
    """Input data violates a precondition."""


class NumericalError(ThroughcastError, ArithmeticError):
    """A numerical procedure failed to produce a usable result."""


# ingestion
class EmptyFile(DataError):
    pass


class MalformedHeader(DataError):
    pass


class UnparseableRow(DataError):
    def __init__(self, line, reason=""):
        self.line = line
        msg = f"line {line}: unparseable row"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class NonHourlySpacing(DataError):
    def __init__(self, previous_ms, current_ms, spacing_ms=3_600_000):
        self.previous_ms = previous_ms
        self.current_ms = current_ms
        super().__init__(
            f"gap of {current_ms - previous_ms} ms between ts={previous_ms} and "
            f"ts={current_ms} (expected {spacing_ms} ms)"
        )


# series shape / content
class SeriesTooShort(DataError):
    pass


class ConstantSeries(DataError):
    pass


class ZeroVariance(DataError):
    pass


class ZeroDenominator(DataError):
    pass


class LengthMismatch(DataError):
    pass


class UnsupportedOrder(DataError):
    pass


class BadFractions(DataError):
    pass


class BadLength(DataError):
    pass


class NonPositiveHorizon(DataError):
    pass


class BadHorizon(DataError):
    pass


class LagTooLarge(DataError):
    pass


class NonStationaryCoefficients(DataError):
    pass


class PartTooShort(DataError):
    pass


class ShapeMismatch(DataError):
    pass


class HorizonExceedsHeads(DataError):
    pass


class EmptyData(DataError):
    pass


class NonFiniteInput(DataError):
    pass


class DimensionMismatch(DataError):
    pass


class BadK(DataError):
    pass


class Empty(DataError):
    pass


class ZeroActual(DataError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"actual value at index {index} is zero; MAPE undefined")


class EmptyClass(DataError):
    pass


class TooShort(DataError):
    pass


class DegenerateX(DataError):
    pass


class MissingArtifact(DataError):
    pass


# numerical failures
class SingularRegression(NumericalError):
    pass


class OptimizerDidNotConverge(NumericalError):
    pass


class DegenerateVariance(NumericalError):
    pass


class AllCandidatesFailed(NumericalError):
    pass


class DivergedLoss(NumericalError):
    pass
