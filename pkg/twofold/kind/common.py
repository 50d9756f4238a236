import typing as tp
from fractions import Fraction

import numpy as np

from twofold import arith, coupled
from twofold.arith import SqrtPropagation, add_lanes
from twofold.eft import Dotted, as_dotted, dtype_for, round_fraction
from twofold.kind.base import BaseKind
from twofold.number import Coupled, Shape, Twofold
from twofold.reductions import plain_sum, tsum_twofold


def _exact(x: tp.Any) -> bool:
    return isinstance(x, (int, Fraction, str)) and not isinstance(x, bool)


class DottedKind(BaseKind):
    """Plain floats of one width: the computation twofolds shadow."""

    shape = Shape.DOTTED

    def from_number(self, x: tp.Any) -> Dotted:
        if _exact(x):
            return round_fraction(Fraction(x), self.width)
        return as_dotted(x, self.width)

    def truncate(self, x: Dotted) -> Dotted:
        return x

    def add(self, x: Dotted, y: Dotted) -> Dotted:
        return x + y

    def sub(self, x: Dotted, y: Dotted) -> Dotted:
        return x - y

    def mul(self, x: Dotted, y: Dotted) -> Dotted:
        return x * y

    def div(self, x: Dotted, y: Dotted) -> Dotted:
        with np.errstate(divide="ignore", invalid="ignore"):
            return x / y

    def sqrt(self, x: Dotted) -> Dotted:
        with np.errstate(invalid="ignore"):
            return np.sqrt(x)

    def neg(self, x: Dotted) -> Dotted:
        return -x

    def abs(self, x: Dotted) -> Dotted:
        return np.abs(x)

    def lt(self, x: Dotted, y: Dotted) -> bool:
        return bool(x < y)

    def gt(self, x: Dotted, y: Dotted) -> bool:
        return bool(x > y)

    def eq(self, x: Dotted, y: Dotted) -> bool:
        return bool(x == y)

    def running_sum(self, term: Dotted, count: int) -> Dotted:
        return plain_sum(np.full(count, term, dtype=dtype_for(self.width)))


class TwofoldKind(BaseKind):
    """Twofolds of one width, with the t-family and value-lane comparisons.

    Args:
        width: 32 or 64.
        sqrt_propagation: error propagation of `sqrt`.
    """

    shape = Shape.TWOFOLD

    def __init__(
        self,
        width: int,
        *,
        sqrt_propagation: SqrtPropagation = SqrtPropagation.EXACT,
    ) -> None:
        super().__init__(width)
        self.sqrt_propagation = sqrt_propagation

    def from_number(self, x: tp.Any) -> Twofold:
        return Twofold.from_number(x, self.width)

    def truncate(self, x: Twofold) -> Twofold:
        return Twofold(x.value, dtype_for(self.width)(0))

    def add(self, x: tp.Any, y: tp.Any) -> Twofold:
        return arith.tadd(x, y)

    def sub(self, x: tp.Any, y: tp.Any) -> Twofold:
        return arith.tsub(x, y)

    def mul(self, x: tp.Any, y: tp.Any) -> Twofold:
        return arith.tmul(x, y)

    def div(self, x: tp.Any, y: tp.Any) -> Twofold:
        return arith.tdiv(x, y)

    def sqrt(self, x: tp.Any) -> Twofold:
        return arith.tsqrt(x, propagation=self.sqrt_propagation)

    def neg(self, x: Twofold) -> Twofold:
        return arith.tneg(x)

    def abs(self, x: Twofold) -> Twofold:
        return arith.tabs(x)

    def lt(self, x: tp.Any, y: tp.Any) -> bool:
        return arith.tlt(x, y)

    def gt(self, x: tp.Any, y: tp.Any) -> bool:
        return arith.tgt(x, y)

    def eq(self, x: tp.Any, y: tp.Any) -> bool:
        return arith.teq(x, y)

    def running_sum(self, term: Twofold, count: int) -> Twofold:
        dtype = dtype_for(self.width)
        return tsum_twofold(
            np.full(count, term.value, dtype=dtype),
            np.full(count, term.error, dtype=dtype),
        )


class CoupledKind(BaseKind):
    """Coupled numbers of one width, with the p-family and lexicographic comparisons."""

    shape = Shape.COUPLED

    def from_number(self, x: tp.Any) -> Coupled:
        return tp.cast(Coupled, Coupled.from_number(x, self.width))

    def truncate(self, x: Coupled) -> Coupled:
        return Coupled(x.value, dtype_for(self.width)(0))

    def add(self, x: tp.Any, y: tp.Any) -> Coupled:
        return coupled.padd(x, y)

    def sub(self, x: tp.Any, y: tp.Any) -> Coupled:
        return coupled.psub(x, y)

    def mul(self, x: tp.Any, y: tp.Any) -> Coupled:
        return coupled.pmul(x, y)

    def div(self, x: tp.Any, y: tp.Any) -> Coupled:
        return coupled.pdiv(x, y)

    def sqrt(self, x: tp.Any) -> Coupled:
        return coupled.psqrt(x)

    def neg(self, x: Coupled) -> Coupled:
        return coupled.pneg(x)

    def abs(self, x: Coupled) -> Coupled:
        return coupled.pabs(x)

    def lt(self, x: tp.Any, y: tp.Any) -> bool:
        return coupled.plt(x, y)

    def gt(self, x: tp.Any, y: tp.Any) -> bool:
        return coupled.pgt(x, y)

    def eq(self, x: tp.Any, y: tp.Any) -> bool:
        return coupled.peq(x, y)

    def running_sum(self, term: Coupled, count: int) -> Coupled:
        # padd on raw lanes, no per-step objects
        dtype = dtype_for(self.width)
        v, e = dtype(term.value), dtype(term.error)
        s0, s1 = dtype(0), dtype(0)
        with np.errstate(invalid="ignore", over="ignore"):
            for _ in range(count):
                s0, s1 = coupled.renormalize_lanes(*add_lanes(s0, s1, v, e))
        return Coupled(s0, s1)


KIND_CLASSES: tp.Dict[Shape, tp.Type[BaseKind]] = {
    Shape.DOTTED: DottedKind,
    Shape.TWOFOLD: TwofoldKind,
    Shape.COUPLED: CoupledKind,
}
KIND_NAMES = tuple(
    f"{shape.value}{width}" for shape in KIND_CLASSES for width in (32, 64)
)


def get_kind(
    name: str, *, sqrt_propagation: SqrtPropagation = SqrtPropagation.EXACT
) -> BaseKind:
    """Kind by name, e.g. "twofold32".

    Args:
        name: one of `KIND_NAMES`.
        sqrt_propagation: used by twofold kinds only.

    Raises:
        ValueError: for an unknown name.
    """
    for shape, kind_class in KIND_CLASSES.items():
        prefix = shape.value
        if name.startswith(prefix) and name[len(prefix) :] in ("32", "64"):
            width = int(name[len(prefix) :])
            if kind_class is TwofoldKind:
                return TwofoldKind(width, sqrt_propagation=sqrt_propagation)
            return kind_class(width)
    raise ValueError(f"Expected one of {', '.join(KIND_NAMES)}, got {name!r}")
