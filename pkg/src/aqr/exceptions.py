"""Exception types raised by aqr."""


class AqrError(Exception):
    """Base class for all aqr errors."""


class DimensionError(AqrError):
    """Operand shapes do not conform."""


class BreakdownError(AqrError):
    """Gram-Schmidt breakdown: a squared weighted norm came out non-positive.

    ``column`` is the 0-based index of the column being orthogonalized
    when the factorization stopped.
    """

    def __init__(self, column, value=None):
        self.column = column
        self.value = value
        detail = f" (z'Az = {value!r})" if value is not None else ""
        super().__init__(f"breakdown at column {column}{detail}")


class NotPositiveDefiniteError(AqrError):
    """Cholesky hit a non-positive or non-finite pivot."""

    def __init__(self, pivot, value=None):
        self.pivot = pivot
        self.value = value
        detail = f" (pivot value {value!r})" if value is not None else ""
        super().__init__(f"matrix not positive definite at pivot {pivot}{detail}")


class SingularMatrixError(AqrError):
    """Triangular solve with a zero or non-finite diagonal entry."""


class NoConvergenceError(AqrError):
    """An iterative solver did not reach its tolerance within the sweep cap."""


class ParseError(AqrError):
    """Malformed input file. ``line_number`` is 1-based."""

    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class UnsupportedFormatError(AqrError):
    """Matrix Market qualifier that this reader does not handle."""


class InfeasibleTargetError(AqrError):
    """No admissible scaling reaches the requested condition number."""


class RankDeficientError(AqrError):
    """A quantity that requires full column rank met a zero singular value."""
