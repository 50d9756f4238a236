class TwofoldError(Exception):
    """Base class of every error raised by twofold."""


class FloatEnvironmentError(TwofoldError, RuntimeError):
    """The host floating-point environment breaks the error-free transformations.

    Raised by the import-time self-check when rounding is not to-nearest-even or
    when the fused multiply-add is not fused.
    """


class ShapeMismatchError(TwofoldError, ValueError):
    """Lane arrays of different length or width were combined."""


class SingularMatrixError(TwofoldError, ArithmeticError):
    def __init__(self, column: int) -> None:
        super().__init__(f"Matrix is singular: zero pivot in column {column}")
        self.column = column


class ParseError(TwofoldError, ValueError):
    """Text is not a valid `VALUE[ERROR]` literal."""


class ScenarioError(TwofoldError, ValueError):
    """Invalid accuracy-lab scenario configuration."""
