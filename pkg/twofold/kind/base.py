import typing as tp
from abc import ABC, abstractmethod
from fractions import Fraction

from twofold.eft import Dotted, as_dotted, dtype_for, round_fraction
from twofold.number import Shape, error_of, value_of


class BaseKind(ABC):
    """One shape of number at one width, with the arithmetic scenario code needs.

    Scenario and solver code is written once against this interface and runs
    unchanged for dotted, twofold and coupled numbers of either width.
    """

    shape: tp.ClassVar[Shape]

    def __init__(self, width: int) -> None:
        dtype_for(width)
        self.width = width

    @property
    def name(self) -> str:
        return f"{self.shape.value}{self.width}"

    def __repr__(self) -> str:
        return f"{type(self).__name__}(width={self.width})"

    def constant(self, x: tp.Union[int, float, Fraction]) -> Dotted:
        """A dotted literal of this kind's width, like `21` in `21*b`."""
        if isinstance(x, Fraction):
            return round_fraction(x, self.width)
        return as_dotted(x, self.width)

    def value_of(self, x: tp.Any) -> Dotted:
        return value_of(x)

    def error_of(self, x: tp.Any) -> Dotted:
        return error_of(x)

    def is_zero(self, x: tp.Any) -> bool:
        return self.eq(x, self.constant(0))

    @abstractmethod
    def running_sum(self, term: tp.Any, count: int) -> tp.Any:
        """Abstract method summing `count` copies of term left to right from zero."""

    @abstractmethod
    def from_number(self, x: tp.Any) -> tp.Any:
        """Abstract method converting a float or an exact rational into this kind."""

    @abstractmethod
    def truncate(self, x: tp.Any) -> tp.Any:
        """Abstract method dropping the error lane of x, if any."""

    @abstractmethod
    def add(self, x: tp.Any, y: tp.Any) -> tp.Any:
        """Abstract method for x + y."""

    @abstractmethod
    def sub(self, x: tp.Any, y: tp.Any) -> tp.Any:
        """Abstract method for x - y."""

    @abstractmethod
    def mul(self, x: tp.Any, y: tp.Any) -> tp.Any:
        """Abstract method for x * y."""

    @abstractmethod
    def div(self, x: tp.Any, y: tp.Any) -> tp.Any:
        """Abstract method for x / y."""

    @abstractmethod
    def sqrt(self, x: tp.Any) -> tp.Any:
        """Abstract method for the square root of x."""

    @abstractmethod
    def neg(self, x: tp.Any) -> tp.Any:
        """Abstract method for -x."""

    @abstractmethod
    def abs(self, x: tp.Any) -> tp.Any:
        """Abstract method for |x|."""

    @abstractmethod
    def lt(self, x: tp.Any, y: tp.Any) -> bool:
        """Abstract method for x < y under the kind's comparison semantics."""

    @abstractmethod
    def gt(self, x: tp.Any, y: tp.Any) -> bool:
        """Abstract method for x > y under the kind's comparison semantics."""

    @abstractmethod
    def eq(self, x: tp.Any, y: tp.Any) -> bool:
        """Abstract method for x == y under the kind's comparison semantics."""
