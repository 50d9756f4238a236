"""Twofold arithmetic: the t-family of operations.

Each binary operation comes in four arities, named after which arguments carry
an error lane: `tadd` dispatches on its arguments' shapes, `tadd1` takes a
twofold and a dotted number, `tadd2` a dotted number and a twofold, `tadd0` two
dotted numbers. Mixed widths promote to the wider width; Python ints take the
width of the other operand.

The `*_lanes` kernels work on raw value/error lanes (numpy scalars or arrays)
and are shared with the structure-of-arrays slices in `twofold.reductions`.
"""
import enum
import typing as tp

import numpy as np

from twofold.eft import (
    Dotted,
    EftPair,
    Lane,
    as_dotted,
    ddiv,
    dfma,
    dmul,
    dsqrt,
    dtype_for,
    two_prod,
    two_sum,
    width_of,
)
from twofold.number import Shape, Twofold, is_weak, shape_of


class SqrtPropagation(enum.Enum):
    """Sign with which the argument's error lane enters a square root's error.

    EXACT is the first-order estimate `(r + x1) / (z0 + sqrt(x0 + x1))`. MIRRORED
    subtracts the incoming error instead and reproduces historical reference
    logs computed that way.
    """

    EXACT = "exact"
    MIRRORED = "mirrored"


# lane kernels


@np.errstate(over="ignore", invalid="ignore")
def add_lanes(x0: Lane, x1: Lane, y0: Lane, y1: Lane) -> EftPair:
    h, e = two_sum(x0, y0)
    return h, e + (x1 + y1)


@np.errstate(over="ignore", invalid="ignore")
def add1_lanes(x0: Lane, x1: Lane, y0: Lane) -> EftPair:
    h, e = two_sum(x0, y0)
    return h, e + x1


@np.errstate(over="ignore", invalid="ignore")
def add2_lanes(x0: Lane, y0: Lane, y1: Lane) -> EftPair:
    h, e = two_sum(x0, y0)
    return h, e + y1


def add0_lanes(x0: Lane, y0: Lane) -> EftPair:
    return two_sum(x0, y0)


def sub_lanes(x0: Lane, x1: Lane, y0: Lane, y1: Lane) -> EftPair:
    return add_lanes(x0, x1, -y0, -y1)


def sub1_lanes(x0: Lane, x1: Lane, y0: Lane) -> EftPair:
    return add1_lanes(x0, x1, -y0)


def sub2_lanes(x0: Lane, y0: Lane, y1: Lane) -> EftPair:
    return add2_lanes(x0, -y0, -y1)


def sub0_lanes(x0: Lane, y0: Lane) -> EftPair:
    return two_sum(x0, -y0)


@np.errstate(over="ignore", invalid="ignore")
def mul_lanes(x0: Lane, x1: Lane, y0: Lane, y1: Lane) -> EftPair:
    # x1*y1 is second order and dropped
    z0 = dmul(x0, y0)
    return z0, dfma(x0, y0, -z0) + (x0 * y1 + x1 * y0)


@np.errstate(over="ignore", invalid="ignore")
def mul1_lanes(x0: Lane, x1: Lane, y0: Lane) -> EftPair:
    z0 = dmul(x0, y0)
    return z0, dfma(x0, y0, -z0) + x1 * y0


@np.errstate(over="ignore", invalid="ignore")
def mul2_lanes(x0: Lane, y0: Lane, y1: Lane) -> EftPair:
    z0 = dmul(x0, y0)
    return z0, dfma(x0, y0, -z0) + x0 * y1


def mul0_lanes(x0: Lane, y0: Lane) -> EftPair:
    return two_prod(x0, y0)


def div_lanes(x0: Lane, x1: Lane, y0: Lane, y1: Lane) -> EftPair:
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        z0 = ddiv(x0, y0)
        r = dfma(-z0, y0, x0)
        return z0, ((r + x1) - z0 * y1) / y0


def div1_lanes(x0: Lane, x1: Lane, y0: Lane) -> EftPair:
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        z0 = ddiv(x0, y0)
        return z0, (dfma(-z0, y0, x0) + x1) / y0


def div2_lanes(x0: Lane, y0: Lane, y1: Lane) -> EftPair:
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        z0 = ddiv(x0, y0)
        return z0, (dfma(-z0, y0, x0) - z0 * y1) / y0


def div0_lanes(x0: Lane, y0: Lane) -> EftPair:
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        z0 = ddiv(x0, y0)
        return z0, dfma(-z0, y0, x0) / y0


def sqrt_lanes(
    x0: Lane, x1: Lane, propagation: SqrtPropagation = SqrtPropagation.EXACT
) -> EftPair:
    """Square root lanes.

    A negative value lane gives NaN[NaN]. A non-negative value lane whose
    value+error sum is negative keeps the value and flags the error lane NaN.
    """
    dtype = np.result_type(x0, x1).type
    nan, zero = dtype(np.nan), dtype(0)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        z0 = dsqrt(x0)
        r = dfma(-z0, z0, x0)
        s = x0 + x1
        incoming = x1 if propagation is SqrtPropagation.EXACT else -x1
        z1 = (r + incoming) / (z0 + np.sqrt(s))
        z1 = np.where(s < 0, nan, np.where((z0 == 0) & (x1 == 0), zero, z1))
        negative = x0 < 0
        return np.where(negative, nan, z0)[()], np.where(negative, nan, z1)[()]


def sqrt0_lanes(x0: Lane) -> EftPair:
    dtype = np.result_type(x0).type
    nan, zero = dtype(np.nan), dtype(0)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        z0 = dsqrt(x0)
        z1 = dfma(-z0, z0, x0) / (z0 + z0)
        z1 = np.where(z0 == 0, zero, z1)
        negative = x0 < 0
        return np.where(negative, nan, z0)[()], np.where(negative, nan, z1)[()]


# operand handling


class Kernels(tp.NamedTuple):
    full: tp.Callable[..., EftPair]
    first: tp.Callable[..., EftPair]
    second: tp.Callable[..., EftPair]
    dotted: tp.Callable[..., EftPair]


_ADD = Kernels(add_lanes, add1_lanes, add2_lanes, add0_lanes)
_SUB = Kernels(sub_lanes, sub1_lanes, sub2_lanes, sub0_lanes)
_MUL = Kernels(mul_lanes, mul1_lanes, mul2_lanes, mul0_lanes)
_DIV = Kernels(div_lanes, div1_lanes, div2_lanes, div0_lanes)


def _width(x: tp.Any) -> tp.Optional[int]:
    if is_weak(x):
        return None
    return x.width if isinstance(x, Twofold) else width_of(x)


def common_width(*args: tp.Any) -> int:
    """Widest width among the arguments; ints do not count, binary64 if all are."""
    widths = [w for w in map(_width, args) if w is not None]
    return max(widths) if widths else 64


def lanes(x: tp.Any, width: int) -> tp.Tuple[Dotted, tp.Optional[Dotted]]:
    """(value, error) of x cast to a width; error is None for dotted numbers."""
    dtype = dtype_for(width)
    if isinstance(x, Twofold):
        return dtype(x.value), dtype(x.error)
    shape_of(x)
    return as_dotted(x, width), None


def apply_kernels(kernels: Kernels, x: tp.Any, y: tp.Any) -> EftPair:
    width = common_width(x, y)
    x0, x1 = lanes(x, width)
    y0, y1 = lanes(y, width)
    if x1 is not None and y1 is not None:
        return kernels.full(x0, x1, y0, y1)
    if x1 is not None:
        return kernels.first(x0, x1, y0)
    if y1 is not None:
        return kernels.second(x0, y0, y1)
    return kernels.dotted(x0, y0)


def check_shape(x: tp.Any, shaped: bool, position: str) -> None:
    is_shaped = shape_of(x) is not Shape.DOTTED
    if is_shaped != shaped:
        expected = "a twofold" if shaped else "a dotted number"
        raise TypeError(f"Expected {expected} as {position} argument, got {type(x)}")


def _arity(
    kernels: Kernels, x: tp.Any, y: tp.Any, first: bool, second: bool
) -> Twofold:
    check_shape(x, first, "first")
    check_shape(y, second, "second")
    return Twofold(*apply_kernels(kernels, x, y))


# addition


def tadd(x: tp.Any, y: tp.Any) -> Twofold:
    """Twofold sum; the value lane is fl(x.value + y.value).

    With both arguments twofold this costs exactly eight additions: six in
    two_sum and two folding the incoming errors.
    """
    return Twofold(*apply_kernels(_ADD, x, y))


def tadd1(x: Twofold, y: tp.Any) -> Twofold:
    return _arity(_ADD, x, y, True, False)


def tadd2(x: tp.Any, y: Twofold) -> Twofold:
    return _arity(_ADD, x, y, False, True)


def tadd0(x: tp.Any, y: tp.Any) -> Twofold:
    """Twofold sum of dotted arguments: value+error is the exact sum."""
    return _arity(_ADD, x, y, False, False)


# subtraction


def tsub(x: tp.Any, y: tp.Any) -> Twofold:
    """Twofold difference, bitwise equal to `tadd(x, tneg(y))`."""
    return Twofold(*apply_kernels(_SUB, x, y))


def tsub1(x: Twofold, y: tp.Any) -> Twofold:
    return _arity(_SUB, x, y, True, False)


def tsub2(x: tp.Any, y: Twofold) -> Twofold:
    return _arity(_SUB, x, y, False, True)


def tsub0(x: tp.Any, y: tp.Any) -> Twofold:
    return _arity(_SUB, x, y, False, False)


# multiplication


def tmul(x: tp.Any, y: tp.Any) -> Twofold:
    """Twofold product: `z1 = fma(x0, y0, -z0) + (x0*y1 + x1*y0)`."""
    return Twofold(*apply_kernels(_MUL, x, y))


def tmul1(x: Twofold, y: tp.Any) -> Twofold:
    return _arity(_MUL, x, y, True, False)


def tmul2(x: tp.Any, y: Twofold) -> Twofold:
    return _arity(_MUL, x, y, False, True)


def tmul0(x: tp.Any, y: tp.Any) -> Twofold:
    """Twofold product of dotted arguments: two_prod, exact outside underflow."""
    return _arity(_MUL, x, y, False, False)


# division


def tdiv(x: tp.Any, y: tp.Any) -> Twofold:
    """Twofold quotient: `z1 = (fma(-z0, y0, x0) + x1 - z0*y1) / y0`.

    Division by a zero value lane follows IEEE on the value lane and leaves the
    error lane non-finite.
    """
    return Twofold(*apply_kernels(_DIV, x, y))


def tdiv1(x: Twofold, y: tp.Any) -> Twofold:
    return _arity(_DIV, x, y, True, False)


def tdiv2(x: tp.Any, y: Twofold) -> Twofold:
    return _arity(_DIV, x, y, False, True)


def tdiv0(x: tp.Any, y: tp.Any) -> Twofold:
    return _arity(_DIV, x, y, False, False)


# square root


def tsqrt(
    x: tp.Any, *, propagation: SqrtPropagation = SqrtPropagation.EXACT
) -> Twofold:
    """Twofold square root.

    Args:
        x: twofold or dotted number.
        propagation: how the argument's error lane enters the result's error.

    Returns:
        NaN[NaN] if x.value < 0; value[NaN] if x.value >= 0 but x.value + x.error
        < 0; otherwise sqrt(x.value) with its first-order error.
    """
    if shape_of(x) is Shape.DOTTED:
        return tsqrt0(x)
    x0, x1 = lanes(x, x.width)
    return Twofold(*sqrt_lanes(x0, x1, propagation))


def tsqrt0(x: tp.Any) -> Twofold:
    check_shape(x, False, "first")
    x0, _ = lanes(x, common_width(x))
    return Twofold(*sqrt0_lanes(x0))


# comparisons: value lanes only, anything involving NaN is false


def _values(x: tp.Any, y: tp.Any) -> tp.Tuple[Dotted, Dotted]:
    width = common_width(x, y)
    return lanes(x, width)[0], lanes(y, width)[0]


def tlt(x: tp.Any, y: tp.Any) -> bool:
    a, b = _values(x, y)
    return bool(a < b)


def tle(x: tp.Any, y: tp.Any) -> bool:
    a, b = _values(x, y)
    return bool(a <= b)


def tgt(x: tp.Any, y: tp.Any) -> bool:
    a, b = _values(x, y)
    return bool(a > b)


def tge(x: tp.Any, y: tp.Any) -> bool:
    a, b = _values(x, y)
    return bool(a >= b)


def teq(x: tp.Any, y: tp.Any) -> bool:
    a, b = _values(x, y)
    return bool(a == b)


def tne(x: tp.Any, y: tp.Any) -> bool:
    a, b = _values(x, y)
    return bool(a < b or a > b)


# service functions


def _shaped(x: tp.Any) -> Twofold:
    if not isinstance(x, Twofold):
        raise TypeError(f"Expected a twofold, got {type(x)}")
    return x


def tneg(x: Twofold) -> Twofold:
    """Negate both lanes."""
    x = _shaped(x)
    return Twofold(-x.value, -x.error)


def tabs(x: Twofold) -> Twofold:
    """tneg(x) if x.value < 0, else x."""
    x = _shaped(x)
    if x.value < 0:
        return tneg(x)
    return Twofold(x.value, x.error)


def tisinf(x: Twofold) -> bool:
    x = _shaped(x)
    return bool(np.isinf(x.value) or np.isinf(x.error))


def tisnan(x: Twofold) -> bool:
    x = _shaped(x)
    return bool(np.isnan(x.value) or np.isnan(x.error))
