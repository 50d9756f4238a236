import enum
import math
import typing as tp
from fractions import Fraction

import attr
import numpy as np

from twofold.eft import (
    Dotted,
    as_dotted,
    dtype_for,
    round_fraction,
    to_fraction,
    width_of,
)


class Shape(enum.Enum):
    DOTTED = "dotted"
    TWOFOLD = "twofold"
    COUPLED = "coupled"


def is_weak(x: tp.Any) -> bool:
    return isinstance(x, (int, np.integer)) and not isinstance(x, (bool, np.bool_))


def _unify(a: tp.Any, b: tp.Any) -> tp.Tuple[Dotted, Dotted]:
    """Bring two dotted numbers to one width; ints take their partner's width."""
    widths = [width_of(x) for x in (a, b) if not is_weak(x)]
    width = max(widths) if widths else 64
    return as_dotted(a, width), as_dotted(b, width)


@attr.s(frozen=True, slots=True, eq=False, repr=False)
class Twofold:
    """A value and an estimate of its rounding error, as an unevaluated sum.

    The value lane evolves through every t-operation exactly like the plain
    float computation it shadows; the error lane estimates `x - value`. No
    magnitude relation between the lanes is required.

    Python operators (`+ - * /`, comparisons, `abs`) route to the t-functions of
    `twofold.arith`; operands may be dotted numbers on either side.
    """

    SHAPE: tp.ClassVar[Shape] = Shape.TWOFOLD

    value: Dotted = attr.ib()
    error: Dotted = attr.ib(default=0)

    def __attrs_post_init__(self) -> None:
        value, error = _unify(self.value, self.error)
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "error", error)

    @property
    def width(self) -> int:
        return width_of(self.value)

    @classmethod
    def from_number(cls, x: tp.Any, width: tp.Optional[int] = None) -> "Twofold":
        """Build a twofold from any real number.

        Ints, fractions and decimal strings are taken as exact rationals: the value
        is the correctly rounded conversion and the error the rounded remainder.
        Floats and twofolds are converted with `convert`.

        Args:
            x: int, float, numpy float, Fraction, decimal string or Twofold.
            width: 32 or 64; defaults to the width of x (binary64 for exact
                rationals).

        Returns:
            Twofold
        """
        if isinstance(x, Twofold):
            result = convert(x, width or x.width)
        elif isinstance(x, (float, np.floating)):
            result = convert(x, width or width_of(x))
        else:
            result = _from_rational(x, width or 64)
        if cls is Twofold:
            return result
        from twofold.coupled import renormalize

        return renormalize(result)

    def astype(self, width: int) -> "Twofold":
        return convert(self, width)

    def compensated(self) -> Dotted:
        """value + error rounded once."""
        return self.value + self.error

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        from twofold.formatting import format_twofold

        return format_twofold(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"

    def __hash__(self) -> int:
        return hash(float(self.value))

    # operators

    def __neg__(self) -> "Twofold":
        from twofold.arith import tneg

        return tneg(self)

    def __pos__(self) -> "Twofold":
        return Twofold(self.value, self.error)

    def __abs__(self) -> "Twofold":
        from twofold.arith import tabs

        return tabs(self)

    def __add__(self, other: tp.Any) -> "Twofold":
        from twofold.arith import tadd

        return tadd(self, other) if _is_operand(other) else NotImplemented

    def __radd__(self, other: tp.Any) -> "Twofold":
        from twofold.arith import tadd

        return tadd(other, self) if _is_operand(other) else NotImplemented

    def __sub__(self, other: tp.Any) -> "Twofold":
        from twofold.arith import tsub

        return tsub(self, other) if _is_operand(other) else NotImplemented

    def __rsub__(self, other: tp.Any) -> "Twofold":
        from twofold.arith import tsub

        return tsub(other, self) if _is_operand(other) else NotImplemented

    def __mul__(self, other: tp.Any) -> "Twofold":
        from twofold.arith import tmul

        return tmul(self, other) if _is_operand(other) else NotImplemented

    def __rmul__(self, other: tp.Any) -> "Twofold":
        from twofold.arith import tmul

        return tmul(other, self) if _is_operand(other) else NotImplemented

    def __truediv__(self, other: tp.Any) -> "Twofold":
        from twofold.arith import tdiv

        return tdiv(self, other) if _is_operand(other) else NotImplemented

    def __rtruediv__(self, other: tp.Any) -> "Twofold":
        from twofold.arith import tdiv

        return tdiv(other, self) if _is_operand(other) else NotImplemented

    def __lt__(self, other: tp.Any) -> bool:
        from twofold.arith import tlt

        return tlt(self, other) if _is_operand(other) else NotImplemented

    def __le__(self, other: tp.Any) -> bool:
        from twofold.arith import tle

        return tle(self, other) if _is_operand(other) else NotImplemented

    def __gt__(self, other: tp.Any) -> bool:
        from twofold.arith import tgt

        return tgt(self, other) if _is_operand(other) else NotImplemented

    def __ge__(self, other: tp.Any) -> bool:
        from twofold.arith import tge

        return tge(self, other) if _is_operand(other) else NotImplemented

    def __eq__(self, other: tp.Any) -> bool:  # type: ignore[override]
        from twofold.arith import teq

        return teq(self, other) if _is_operand(other) else NotImplemented

    def __ne__(self, other: tp.Any) -> bool:  # type: ignore[override]
        from twofold.arith import tne

        return tne(self, other) if _is_operand(other) else NotImplemented


@attr.s(frozen=True, slots=True, eq=False, repr=False)
class Coupled(Twofold):
    """A renormalized twofold: `fl(value + error) == value`.

    The lanes' mantissas do not overlap, so |error| <= ulp(value)/2. The
    constructor does not renormalize; use `Coupled.from_twofold` (or
    `twofold.coupled.renormalize`) for arbitrary pairs. Arithmetic operators on
    coupled operands return plain twofolds; use the p-functions of
    `twofold.coupled` for coupled results.
    """

    SHAPE: tp.ClassVar[Shape] = Shape.COUPLED

    @classmethod
    def from_twofold(cls, x: Twofold) -> "Coupled":
        from twofold.coupled import renormalize

        return renormalize(x)


def _is_operand(x: tp.Any) -> bool:
    return isinstance(x, (Twofold, float, np.floating)) or is_weak(x)


def shape_of(x: tp.Any) -> Shape:
    """Shape of a number: twofold and coupled instances, or dotted floats and ints."""
    if isinstance(x, Twofold):
        return x.SHAPE
    if isinstance(x, (float, np.floating)) or is_weak(x):
        return Shape.DOTTED
    raise TypeError(f"Expected a dotted, twofold or coupled number, got {type(x)}")


def value_of(x: tp.Any) -> Dotted:
    """x.value, or x itself if x is dotted."""
    if isinstance(x, Twofold):
        return x.value
    shape_of(x)
    return as_dotted(x) if is_weak(x) else x


def error_of(x: tp.Any) -> Dotted:
    """x.error, or a zero of x's width if x is dotted."""
    if isinstance(x, Twofold):
        return x.error
    shape_of(x)
    return dtype_for(width_of(x))(0)


def _same_lane(a: Dotted, b: Dotted) -> bool:
    if width_of(a) != width_of(b):
        return False
    if np.isnan(a) or np.isnan(b):
        return bool(np.isnan(a) and np.isnan(b))
    return bool(a == b) and bool(np.signbit(a) == np.signbit(b))


def identical(x: tp.Any, y: tp.Any) -> bool:
    """Bitwise equality of both lanes and widths; every NaN matches every NaN.

    Dotted numbers are compared as twofolds with a +0 error lane.
    """
    return _same_lane(value_of(x), value_of(y)) and _same_lane(error_of(x), error_of(y))


def _from_rational(x: tp.Any, width: int) -> Twofold:
    if isinstance(x, str):
        text = x.strip()
        if text.lower().lstrip("+-") in ("nan", "inf", "infinity"):
            value = dtype_for(width)(float(text))
            return Twofold(value, dtype_for(width)(0))
    try:
        q = Fraction(x)
    except (TypeError, ValueError):
        raise TypeError(f"Expected a real number, got {type(x)}: {x!r}") from None
    value = round_fraction(q, width)
    if not np.isfinite(value):
        return Twofold(value, dtype_for(width)(0))
    return Twofold(value, round_fraction(q - to_fraction(value), width))


def convert(x: tp.Any, width: int) -> Twofold:
    """Convert a dotted number or a twofold to a twofold of another width.

    Widening is exact on both lanes. Narrowing rounds the value lane once and keeps
    the discarded part, plus any incoming error, in the error lane:
    `value = round(x.value)`, `error = round(x.value + x.error - value)`. A value
    that overflows the narrower width becomes an infinity with a zero error lane.

    Args:
        x: dotted number (float, numpy float, int) or Twofold.
        width: 32 or 64.

    Returns:
        Twofold of the requested width.
    """
    dtype = dtype_for(width)
    if not isinstance(x, Twofold):
        if is_weak(x):
            return _from_rational(int(x), width)
        x = Twofold(x, dtype_for(width_of(x))(0))
    if width >= x.width:
        return Twofold(dtype(x.value), dtype(x.error))
    with np.errstate(over="ignore"):
        value = dtype(x.value)
    if np.isfinite(x.value) and np.isfinite(x.error) and np.isfinite(value):
        rest = to_fraction(x.value) - to_fraction(value) + to_fraction(x.error)
        return Twofold(value, round_fraction(rest, width))
    with np.errstate(all="ignore"):
        if not math.isfinite(float(x.value)):
            return Twofold(value, dtype(x.error))
        if not np.isfinite(value):
            # overflowed while narrowing
            return Twofold(value, dtype(0))
        rest = (np.float64(x.value) - np.float64(value)) + x.error
        return Twofold(value, dtype(rest))
