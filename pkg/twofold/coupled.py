"""Coupled (renormalized) arithmetic: the p-family and its helpers.

p-operations take coupled or dotted arguments and return renormalized results,
close to double-double accuracy. That shaped arguments are renormalized is the
caller's responsibility and is not checked; the outputs are checked by an
`assert` that disappears under `python -O`.

`tmulp`, `tdivp` and `tsqrtp` return plain twofolds, computed with fewer
operations than their t-counterparts because coupled arguments have small
error lanes.
"""
import typing as tp

import numpy as np

from twofold.arith import (
    Kernels,
    add1_lanes,
    add2_lanes,
    add_lanes,
    apply_kernels,
    check_shape,
    common_width,
    div0_lanes,
    div1_lanes,
    div2_lanes,
    lanes,
    mul1_lanes,
    mul2_lanes,
    sqrt0_lanes,
    sub1_lanes,
    sub2_lanes,
    sub_lanes,
)
from twofold.eft import (
    EftPair,
    Lane,
    ddiv,
    dfma,
    dmul,
    dsqrt,
    fast_two_sum,
    two_prod,
    two_sum,
)
from twofold.number import Coupled, Shape, Twofold, shape_of


def _keep_nonfinite(x0: Lane, x1: Lane, z: EftPair) -> EftPair:
    # pairs with a non-finite lane pass through unchanged
    finite = np.isfinite(x0) & np.isfinite(x1)
    if np.ndim(finite) == 0:
        return z if finite else (x0, x1)
    return np.where(finite, z[0], x0), np.where(finite, z[1], x1)


def renormalize_lanes(x0: Lane, x1: Lane) -> EftPair:
    """Order the pair by magnitude, then fast_two_sum it."""
    with np.errstate(invalid="ignore", over="ignore"):
        if np.ndim(x0) == 0 and np.ndim(x1) == 0:
            if abs(x0) >= abs(x1):
                z = fast_two_sum(x0, x1)
            else:
                z = fast_two_sum(x1, x0)
        else:
            bigger = np.abs(x0) >= np.abs(x1)
            z = fast_two_sum(np.where(bigger, x0, x1), np.where(bigger, x1, x0))
    return _keep_nonfinite(x0, x1, z)


def fast_renorm_lanes(x0: Lane, x1: Lane) -> EftPair:
    with np.errstate(invalid="ignore", over="ignore"):
        return _keep_nonfinite(x0, x1, fast_two_sum(x0, x1))


def is_renormalized(x0: Lane, x1: Lane) -> bool:
    """True when fl(x0 + x1) == x0 for every finite lane pair."""
    with np.errstate(all="ignore"):
        finite = np.isfinite(x0) & np.isfinite(x1)
        return bool(np.all(~finite | (x0 + x1 == x0)))


def mulp_lanes(x0: Lane, x1: Lane, y0: Lane, y1: Lane) -> EftPair:
    z0 = dmul(x0, y0)
    return z0, dfma(x0, y0, -z0) + dfma(x0, y1, x1 * y0)


def divp_lanes(x0: Lane, x1: Lane, y0: Lane, y1: Lane) -> EftPair:
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        z0 = ddiv(x0, y0)
        r = dfma(-z0, y0, x0)
        return z0, dfma(-z0, y1, r + x1) / y0


def sqrtp_lanes(x0: Lane, x1: Lane) -> EftPair:
    # sqrt(x0 + x1) == z0 to first order for a coupled argument
    dtype = np.result_type(x0, x1).type
    nan, zero = dtype(np.nan), dtype(0)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        z0 = dsqrt(x0)
        z1 = (dfma(-z0, z0, x0) + x1) / (z0 + z0)
        z1 = np.where((z0 == 0) & (x1 == 0), zero, z1)
        negative = x0 < 0
        return np.where(negative, nan, z0)[()], np.where(negative, nan, z1)[()]


def _renormalized(kernel: tp.Callable[..., EftPair]) -> tp.Callable[..., EftPair]:
    def lanes_kernel(*args: Lane) -> EftPair:
        return renormalize_lanes(*kernel(*args))

    return lanes_kernel


def _fast_renormalized(kernel: tp.Callable[..., EftPair]) -> tp.Callable[..., EftPair]:
    def lanes_kernel(*args: Lane) -> EftPair:
        return fast_renorm_lanes(*kernel(*args))

    return lanes_kernel


def _psub0_lanes(x0: Lane, y0: Lane) -> EftPair:
    return two_sum(x0, -y0)


# sums may cancel, so they take the general renormalization
_PADD = Kernels(
    _renormalized(add_lanes),
    _renormalized(add1_lanes),
    _renormalized(add2_lanes),
    two_sum,
)
_PSUB = Kernels(
    _renormalized(sub_lanes),
    _renormalized(sub1_lanes),
    _renormalized(sub2_lanes),
    _psub0_lanes,
)
_PMUL = Kernels(
    _fast_renormalized(mulp_lanes),
    _fast_renormalized(mul1_lanes),
    _fast_renormalized(mul2_lanes),
    two_prod,
)
_PDIV = Kernels(
    _fast_renormalized(divp_lanes),
    _fast_renormalized(div1_lanes),
    _fast_renormalized(div2_lanes),
    _fast_renormalized(div0_lanes),
)


def _coupled(z: EftPair) -> Coupled:
    assert is_renormalized(*z), f"coupled result is not renormalized: {z!r}"
    return Coupled(*z)


def _arity(
    kernels: Kernels, x: tp.Any, y: tp.Any, first: bool, second: bool
) -> Coupled:
    check_shape(x, first, "first")
    check_shape(y, second, "second")
    return _coupled(apply_kernels(kernels, x, y))


# addition


def padd(x: tp.Any, y: tp.Any) -> Coupled:
    """Coupled sum, renormalized."""
    return _coupled(apply_kernels(_PADD, x, y))


def padd1(x: Twofold, y: tp.Any) -> Coupled:
    return _arity(_PADD, x, y, True, False)


def padd2(x: tp.Any, y: Twofold) -> Coupled:
    return _arity(_PADD, x, y, False, True)


def padd0(x: tp.Any, y: tp.Any) -> Coupled:
    """Computes the same as `tadd0`: two_sum is already renormalized."""
    return _arity(_PADD, x, y, False, False)


# subtraction


def psub(x: tp.Any, y: tp.Any) -> Coupled:
    return _coupled(apply_kernels(_PSUB, x, y))


def psub1(x: Twofold, y: tp.Any) -> Coupled:
    return _arity(_PSUB, x, y, True, False)


def psub2(x: tp.Any, y: Twofold) -> Coupled:
    return _arity(_PSUB, x, y, False, True)


def psub0(x: tp.Any, y: tp.Any) -> Coupled:
    return _arity(_PSUB, x, y, False, False)


# multiplication


def pmul(x: tp.Any, y: tp.Any) -> Coupled:
    return _coupled(apply_kernels(_PMUL, x, y))


def pmul1(x: Twofold, y: tp.Any) -> Coupled:
    return _arity(_PMUL, x, y, True, False)


def pmul2(x: tp.Any, y: Twofold) -> Coupled:
    return _arity(_PMUL, x, y, False, True)


def pmul0(x: tp.Any, y: tp.Any) -> Coupled:
    return _arity(_PMUL, x, y, False, False)


# division


def pdiv(x: tp.Any, y: tp.Any) -> Coupled:
    return _coupled(apply_kernels(_PDIV, x, y))


def pdiv1(x: Twofold, y: tp.Any) -> Coupled:
    return _arity(_PDIV, x, y, True, False)


def pdiv2(x: tp.Any, y: Twofold) -> Coupled:
    return _arity(_PDIV, x, y, False, True)


def pdiv0(x: tp.Any, y: tp.Any) -> Coupled:
    return _arity(_PDIV, x, y, False, False)


# square root


def psqrt(x: tp.Any) -> Coupled:
    """Coupled square root; a negative value lane gives NaN[NaN]."""
    if shape_of(x) is Shape.DOTTED:
        return psqrt0(x)
    return _coupled(fast_renorm_lanes(*sqrtp_lanes(*lanes(x, x.width))))


def psqrt0(x: tp.Any) -> Coupled:
    check_shape(x, False, "first")
    x0, _ = lanes(x, common_width(x))
    return _coupled(fast_renorm_lanes(*sqrt0_lanes(x0)))


# fast t-variants for coupled arguments


def _both_shaped(x: tp.Any, y: tp.Any) -> tp.Tuple[Lane, Lane, Lane, Lane]:
    check_shape(x, True, "first")
    check_shape(y, True, "second")
    width = common_width(x, y)
    x0, x1 = lanes(x, width)
    y0, y1 = lanes(y, width)
    return x0, x1, y0, y1


def tmulp(x: Coupled, y: Coupled) -> Twofold:
    """Twofold product of coupled arguments: `fma(x0, y0, -z0) + fma(x0, y1, x1*y0)`."""
    return Twofold(*mulp_lanes(*_both_shaped(x, y)))


def tdivp(x: Coupled, y: Coupled) -> Twofold:
    """Twofold quotient of coupled arguments: `fma(-z0, y1, r + x1) / y0`."""
    return Twofold(*divp_lanes(*_both_shaped(x, y)))


def tsqrtp(x: Coupled) -> Twofold:
    """Twofold square root of a coupled argument: `(r + x1) / (2*z0)`."""
    check_shape(x, True, "first")
    return Twofold(*sqrtp_lanes(*lanes(x, x.width)))


# renormalization


def _pair(x: tp.Any) -> EftPair:
    width = common_width(x)
    x0, x1 = lanes(x, width)
    return x0, (x1 if x1 is not None else type(x0)(0))


def renormalize(x: Twofold) -> Coupled:
    """Renormalize any twofold; value+error is preserved exactly."""
    return Coupled(*renormalize_lanes(*_pair(x)))


def fast_renorm(x: Twofold) -> Coupled:
    """Renormalize a twofold whose error lane is no larger than its value lane.

    Bitwise equal to `renormalize` under that precondition, which is not checked.
    """
    return Coupled(*fast_renorm_lanes(*_pair(x)))


def fast_add0(a: tp.Any, b: tp.Any) -> Coupled:
    """fast_two_sum(a, b) as a coupled number; requires |a| >= |b|."""
    check_shape(a, False, "first")
    check_shape(b, False, "second")
    width = common_width(a, b)
    return Coupled(*fast_two_sum(lanes(a, width)[0], lanes(b, width)[0]))


def fast_sub0(a: tp.Any, b: tp.Any) -> Coupled:
    """fast_add0(a, -b); requires |a| >= |b|."""
    check_shape(a, False, "first")
    check_shape(b, False, "second")
    width = common_width(a, b)
    return Coupled(*fast_two_sum(lanes(a, width)[0], -lanes(b, width)[0]))


# comparisons: lexicographic on (value, error), anything involving NaN is false


def _both(x: tp.Any, y: tp.Any) -> tp.Tuple[Lane, Lane, Lane, Lane]:
    width = common_width(x, y)
    x0, x1 = lanes(x, width)
    y0, y1 = lanes(y, width)
    zero = type(x0)(0)
    return x0, zero if x1 is None else x1, y0, zero if y1 is None else y1


def plt(x: tp.Any, y: tp.Any) -> bool:
    x0, x1, y0, y1 = _both(x, y)
    return bool(x0 < y0 or (x0 == y0 and x1 < y1))


def ple(x: tp.Any, y: tp.Any) -> bool:
    x0, x1, y0, y1 = _both(x, y)
    return bool(x0 < y0 or (x0 == y0 and x1 <= y1))


def pgt(x: tp.Any, y: tp.Any) -> bool:
    x0, x1, y0, y1 = _both(x, y)
    return bool(x0 > y0 or (x0 == y0 and x1 > y1))


def pge(x: tp.Any, y: tp.Any) -> bool:
    x0, x1, y0, y1 = _both(x, y)
    return bool(x0 > y0 or (x0 == y0 and x1 >= y1))


def peq(x: tp.Any, y: tp.Any) -> bool:
    x0, x1, y0, y1 = _both(x, y)
    return bool(x0 == y0 and x1 == y1)


def pne(x: tp.Any, y: tp.Any) -> bool:
    x0, x1, y0, y1 = _both(x, y)
    return bool(x0 < y0 or x0 > y0 or (x0 == y0 and (x1 < y1 or x1 > y1)))


# service functions


def _coupled_arg(x: tp.Any) -> Twofold:
    if not isinstance(x, Twofold):
        raise TypeError(f"Expected a coupled number, got {type(x)}")
    return x


def pneg(x: Coupled) -> Coupled:
    x = _coupled_arg(x)
    return Coupled(-x.value, -x.error)


def pabs(x: Coupled) -> Coupled:
    x = _coupled_arg(x)
    if x.value < 0:
        return pneg(x)
    return Coupled(x.value, x.error)


def pisinf(x: Coupled) -> bool:
    x = _coupled_arg(x)
    return bool(np.isinf(x.value) or np.isinf(x.error))


def pisnan(x: Coupled) -> bool:
    x = _coupled_arg(x)
    return bool(np.isnan(x.value) or np.isnan(x.error))
