"""Shape-generic helpers that look like the standard math functions.

Each routes to the dotted, twofold or coupled variant by the argument's shape.
"""
import typing as tp

import numpy as np

from twofold.arith import (
    SqrtPropagation,
    common_width,
    lanes,
    tabs,
    tisinf,
    tisnan,
    tsqrt,
)
from twofold.coupled import pabs, pisinf, pisnan, psqrt
from twofold.number import Shape, shape_of


def _dotted(x: tp.Any) -> tp.Any:
    return lanes(x, common_width(x))[0]


def fabs(x: tp.Any) -> tp.Any:
    shape = shape_of(x)
    if shape is Shape.COUPLED:
        return pabs(x)
    if shape is Shape.TWOFOLD:
        return tabs(x)
    return np.abs(_dotted(x))


def sqrt(
    x: tp.Any, *, propagation: SqrtPropagation = SqrtPropagation.EXACT
) -> tp.Any:
    """Dotted sqrt for dotted x, `psqrt` for coupled x, `tsqrt` otherwise."""
    shape = shape_of(x)
    if shape is Shape.COUPLED:
        return psqrt(x)
    if shape is Shape.TWOFOLD:
        return tsqrt(x, propagation=propagation)
    with np.errstate(invalid="ignore"):
        return np.sqrt(_dotted(x))


def isinf(x: tp.Any) -> bool:
    shape = shape_of(x)
    if shape is Shape.COUPLED:
        return pisinf(x)
    if shape is Shape.TWOFOLD:
        return tisinf(x)
    return bool(np.isinf(_dotted(x)))


def isnan(x: tp.Any) -> bool:
    shape = shape_of(x)
    if shape is Shape.COUPLED:
        return pisnan(x)
    if shape is Shape.TWOFOLD:
        return tisnan(x)
    return bool(np.isnan(_dotted(x)))
