"""Strict twofold reductions and structure-of-arrays slices.

`tsum` and `tdot` keep a twofold accumulator `s`: each step adds the term to
`s.value` with two_sum and folds the residual into `s.error`. The value lane is
bitwise the plain left-to-right float loop (`plain_sum`, `plain_dot`), while
value+error reaches nearly doubled precision.

The kernels are vectorized with numpy without changing the order of operations:
`numpy.add.accumulate` is a sequential left-to-right scan, the two_sum residuals
are recomputed elementwise from consecutive partial sums, and the error lane is
one more scan. Arrays are processed in blocks carrying the accumulator between
them.

The dot product baseline is unfused: `p = x*y` rounded, then `s = s + p`.
"""
import logging
import typing as tp

import anyio
import attr
import numpy as np

from twofold.arith import (
    SqrtPropagation,
    add_lanes,
    div_lanes,
    mul_lanes,
    sqrt_lanes,
    sub_lanes,
)
from twofold.eft import Dotted, EftPair, as_dotted, dfma, dtype_for, two_prod, two_sum
from twofold.exceptions import ShapeMismatchError
from twofold.number import Twofold

logger = logging.getLogger(__name__)

_BLOCK = 1 << 16


def lane_array(xs: tp.Any, width: tp.Optional[int] = None) -> np.ndarray:
    """Contiguous 1-d float array of a width; float32 input keeps binary32."""
    array = np.asarray(xs)
    if width is None:
        width = 32 if array.dtype == np.float32 else 64
    array = np.ascontiguousarray(array, dtype=dtype_for(width))
    if array.ndim != 1:
        raise ShapeMismatchError(f"Expected a 1-d array, got shape {array.shape}")
    return array


def _running_sums(block: np.ndarray, carry: Dotted) -> np.ndarray:
    """[carry, carry+b0, (carry+b0)+b1, ...], rounded left to right."""
    out = np.empty(len(block) + 1, dtype=block.dtype)
    out[0] = carry
    out[1:] = block
    np.add.accumulate(out, out=out)
    return out


def _sum_block(
    s0: Dotted, s1: Dotted, x0: np.ndarray, x1: tp.Optional[np.ndarray] = None
) -> EftPair:
    """Add a block of terms to the accumulator (s0, s1).

    Dotted terms step `s = (h, s1 + e)`; twofold terms step `s = (h, e + (s1 + x1))`
    as in `tadd`. The twofold error recurrence becomes one scan over the
    interleaved sequence x1_1, e_1, x1_2, e_2, ...
    """
    if len(x0) == 0:
        return s0, s1
    with np.errstate(invalid="ignore", over="ignore"):
        sums = _running_sums(x0, s0)
        prev, cur = sums[:-1], sums[1:]
        # two_sum(prev, x0) residual, cur is its rounded sum
        t = cur - x0
        e = (prev - t) + (x0 - (cur - t))
        if x1 is None:
            errors = e
        else:
            errors = np.empty(2 * len(e), dtype=e.dtype)
            errors[0::2] = x1
            errors[1::2] = e
        return cur[-1], _running_sums(errors, s1)[-1]


def _blocks(*arrays: np.ndarray) -> tp.Iterator[tp.Tuple[np.ndarray, ...]]:
    n = len(arrays[0])
    for start in range(0, n, _BLOCK):
        yield tuple(a[start : start + _BLOCK] for a in arrays)


def plain_sum(xs: tp.Any, *, width: tp.Optional[int] = None) -> Dotted:
    """The plain left-to-right float sum, starting from +0."""
    array = lane_array(xs, width)
    total = array.dtype.type(0)
    for (block,) in _blocks(array):
        total = _running_sums(block, total)[-1]
    return total


def plain_dot(xs: tp.Any, ys: tp.Any, *, width: tp.Optional[int] = None) -> Dotted:
    """The plain unfused dot product loop: `s = s + fl(x*y)`."""
    x, y = _pair(xs, ys, width)
    total = x.dtype.type(0)
    with np.errstate(over="ignore", invalid="ignore"):
        for bx, by in _blocks(x, y):
            total = _running_sums(bx * by, total)[-1]
    return total


def _pair(
    xs: tp.Any, ys: tp.Any, width: tp.Optional[int]
) -> tp.Tuple[np.ndarray, np.ndarray]:
    x, y = lane_array(xs, width), lane_array(ys, width)
    if len(x) != len(y):
        raise ShapeMismatchError(f"Length mismatch: {len(x)} != {len(y)}")
    if x.dtype != y.dtype:
        common = dtype_for(max(x.dtype.itemsize, y.dtype.itemsize) * 8)
        x, y = x.astype(common), y.astype(common)
    return x, y


def _tsum_sequential(xs: np.ndarray) -> Twofold:
    zero = xs.dtype.type(0)
    s0, s1 = zero, zero
    for (block,) in _blocks(xs):
        s0, s1 = _sum_block(s0, s1, block)
    return Twofold(s0, s1)


def _tsum_twofold_sequential(values: np.ndarray, errors: np.ndarray) -> Twofold:
    zero = values.dtype.type(0)
    s0, s1 = zero, zero
    for v, e in _blocks(values, errors):
        s0, s1 = _sum_block(s0, s1, v, e)
    return Twofold(s0, s1)


def _tdot_sequential(xs: np.ndarray, ys: np.ndarray) -> Twofold:
    zero = xs.dtype.type(0)
    s0, s1 = zero, zero
    with np.errstate(over="ignore", invalid="ignore"):
        for bx, by in _blocks(xs, ys):
            p = bx * by
            s0, s1 = _sum_block(s0, s1, p, dfma(bx, by, -p))
    return Twofold(s0, s1)


def _reduce_chunks(
    kernel: tp.Callable[..., Twofold], arrays: tp.Sequence[np.ndarray], chunks: int
) -> Twofold:
    """Reduce contiguous chunks in worker threads, combine left to right with tadd.

    The result depends on the chunk count but not on scheduling.
    """
    from twofold.arith import tadd

    parts = list(zip(*(np.array_split(a, chunks) for a in arrays)))
    logger.debug(f"Reducing {len(arrays[0])} terms in {chunks} chunks")
    partials: tp.List[tp.Optional[Twofold]] = [None] * len(parts)

    async def reduce_part(index: int, part: tp.Tuple[np.ndarray, ...]) -> None:
        partials[index] = await anyio.to_thread.run_sync(kernel, *part)

    async def reduce_all() -> None:
        async with anyio.create_task_group() as tg:
            for index, part in enumerate(parts):
                tg.start_soon(reduce_part, index, part)

    anyio.run(reduce_all)
    total = partials[0]
    for partial in partials[1:]:
        total = tadd(total, partial)
    assert total is not None
    return total


def _check_chunks(chunks: tp.Optional[int]) -> tp.Optional[int]:
    if chunks is None or chunks == 1:
        return None
    if not isinstance(chunks, int) or chunks < 1:
        raise ValueError(f"Expected a positive chunk count, got {chunks!r}")
    return chunks


def tsum(
    xs: tp.Any, *, width: tp.Optional[int] = None, chunks: tp.Optional[int] = None
) -> Twofold:
    """Strict twofold sum of dotted terms.

    Args:
        xs: array-like of floats.
        width: 32 or 64, defaults to the array's width (binary64 unless float32).
        chunks: reduce that many contiguous chunks in worker threads and combine
            them with `tadd`. Changes the rounding, so the value lane no longer
            equals `plain_sum`; results are reproducible for a fixed count.

    Returns:
        Twofold whose value lane is the plain left-to-right sum, bitwise.
    """
    array = lane_array(xs, width)
    chunks = _check_chunks(chunks)
    if chunks is None:
        return _tsum_sequential(array)
    return _reduce_chunks(_tsum_sequential, [array], chunks)


def tsum_twofold(
    values: tp.Any, errors: tp.Any, *, width: tp.Optional[int] = None
) -> Twofold:
    """Sum twofold terms given as value and error lanes, stepping with `tadd`.

    Bitwise equal to folding `tadd` over the terms from 0[0].
    """
    v, e = _pair(values, errors, width)
    return _tsum_twofold_sequential(v, e)


def tdot(
    xs: tp.Any,
    ys: tp.Any,
    *,
    width: tp.Optional[int] = None,
    chunks: tp.Optional[int] = None,
) -> Twofold:
    """Strict twofold dot product.

    Every product enters the accumulator as its two_prod pair, so value+error
    behaves like a double-double dot product while the value lane is bitwise the
    unfused `plain_dot` loop.

    Raises:
        ShapeMismatchError: if the vectors differ in length.
    """
    x, y = _pair(xs, ys, width)
    chunks = _check_chunks(chunks)
    if chunks is None:
        return _tdot_sequential(x, y)
    return _reduce_chunks(_tdot_sequential, [x, y], chunks)


@attr.s(slots=True, repr=False)
class Accumulator:
    """A twofold running sum.

    After every step the value lane equals the plain running float sum of the
    value lanes added so far.

    Args:
        width: 32 or 64.
    """

    width: int = attr.ib(default=64, kw_only=True)
    value: Dotted = attr.ib(init=False)
    error: Dotted = attr.ib(init=False)

    def __attrs_post_init__(self) -> None:
        self.reset()

    def reset(self) -> None:
        zero = dtype_for(self.width)(0)
        self.value, self.error = zero, zero

    def add(self, x: tp.Any) -> None:
        """Add a dotted term; strict, only the error lane rounds."""
        self.value, e = two_sum(self.value, as_dotted(x, self.width))
        self.error = self.error + e

    def add_twofold(self, x: Twofold) -> None:
        dtype = dtype_for(self.width)
        self.value, self.error = add_lanes(
            self.value, self.error, dtype(x.value), dtype(x.error)
        )

    def add_product(self, x: tp.Any, y: tp.Any) -> None:
        p, q = two_prod(as_dotted(x, self.width), as_dotted(y, self.width))
        self.value, self.error = add_lanes(self.value, self.error, p, q)

    def extend(self, xs: tp.Any) -> None:
        for (block,) in _blocks(lane_array(xs, self.width)):
            self.value, self.error = _sum_block(self.value, self.error, block)

    def extend_products(self, xs: tp.Any, ys: tp.Any) -> None:
        x, y = _pair(xs, ys, self.width)
        with np.errstate(over="ignore", invalid="ignore"):
            for bx, by in _blocks(x, y):
                p = bx * by
                self.value, self.error = _sum_block(
                    self.value, self.error, p, dfma(bx, by, -p)
                )

    @property
    def result(self) -> Twofold:
        return Twofold(self.value, self.error)

    def __repr__(self) -> str:
        return f"Accumulator({self.result})"


@attr.s(frozen=True, slots=True, eq=False)
class TwofoldArray:
    """Twofolds stored as separate value and error arrays of one width."""

    value: np.ndarray = attr.ib(converter=np.asarray)
    error: np.ndarray = attr.ib(converter=np.asarray)

    def __attrs_post_init__(self) -> None:
        if self.value.shape != self.error.shape or self.value.ndim != 1:
            raise ShapeMismatchError(
                f"Expected 1-d lanes of one length, got {self.value.shape} "
                f"and {self.error.shape}"
            )
        if self.value.dtype != self.error.dtype or self.value.dtype not in (
            np.float32,
            np.float64,
        ):
            raise ShapeMismatchError(
                f"Expected lanes of one float width, got {self.value.dtype} "
                f"and {self.error.dtype}"
            )

    @classmethod
    def zeros(cls, n: int, width: int = 64) -> "TwofoldArray":
        dtype = dtype_for(width)
        return cls(np.zeros(n, dtype), np.zeros(n, dtype))

    @classmethod
    def from_values(
        cls, values: tp.Any, width: tp.Optional[int] = None
    ) -> "TwofoldArray":
        array = lane_array(values, width)
        return cls(array, np.zeros_like(array))

    @classmethod
    def from_twofolds(
        cls, items: tp.Sequence[Twofold], width: int = 64
    ) -> "TwofoldArray":
        dtype = dtype_for(width)
        return cls(
            np.array([x.value for x in items], dtype=dtype),
            np.array([x.error for x in items], dtype=dtype),
        )

    @property
    def width(self) -> int:
        return self.value.dtype.itemsize * 8

    def __len__(self) -> int:
        return len(self.value)

    def __getitem__(self, index: int) -> Twofold:
        return Twofold(self.value[index], self.error[index])


def _slice_operands(
    xs: TwofoldArray, ys: TwofoldArray
) -> tp.Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    if len(xs) != len(ys):
        raise ShapeMismatchError(f"Length mismatch: {len(xs)} != {len(ys)}")
    dtype = dtype_for(max(xs.width, ys.width))
    return (
        xs.value.astype(dtype, copy=False),
        xs.error.astype(dtype, copy=False),
        ys.value.astype(dtype, copy=False),
        ys.error.astype(dtype, copy=False),
    )


def tadd_slice(xs: TwofoldArray, ys: TwofoldArray) -> TwofoldArray:
    """Elementwise `tadd`; element i equals the scalar operation, bitwise."""
    with np.errstate(invalid="ignore", over="ignore"):
        return TwofoldArray(*add_lanes(*_slice_operands(xs, ys)))


def tsub_slice(xs: TwofoldArray, ys: TwofoldArray) -> TwofoldArray:
    with np.errstate(invalid="ignore", over="ignore"):
        return TwofoldArray(*sub_lanes(*_slice_operands(xs, ys)))


def tmul_slice(xs: TwofoldArray, ys: TwofoldArray) -> TwofoldArray:
    with np.errstate(invalid="ignore", over="ignore", under="ignore"):
        return TwofoldArray(*mul_lanes(*_slice_operands(xs, ys)))


def tdiv_slice(xs: TwofoldArray, ys: TwofoldArray) -> TwofoldArray:
    return TwofoldArray(*div_lanes(*_slice_operands(xs, ys)))


def tsqrt_slice(
    xs: TwofoldArray, *, propagation: SqrtPropagation = SqrtPropagation.EXACT
) -> TwofoldArray:
    return TwofoldArray(*sqrt_lanes(xs.value, xs.error, propagation))
