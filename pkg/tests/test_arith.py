import operator
import typing as tp
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracle import ERROR_BOUNDS, lane_rows
from twofold import arith
from twofold.arith import SqrtPropagation
from twofold.eft import dtype_for, to_fraction, unit_roundoff
from twofold.number import Twofold, identical, value_of

finite = st.floats(min_value=-1e100, max_value=1e100, allow_nan=False)
errors = st.floats(min_value=-1e-90, max_value=1e-90, allow_nan=False)

T_OPS = {
    "add": arith.tadd,
    "sub": arith.tsub,
    "mul": arith.tmul,
    "div": arith.tdiv,
}
PLAIN_OPS = {
    "add": np.add,
    "sub": np.subtract,
    "mul": np.multiply,
    "div": np.divide,
}


def _leaf(
    rng: np.random.Generator, dtype: tp.Any, ints: bool = False
) -> tp.Tuple[tp.Any, tp.Any]:
    """(operand, plain value): a dotted float, a twofold, or a small int."""
    roll = rng.random()
    value = dtype(np.ldexp(rng.uniform(-1, 1), int(rng.integers(-8, 8))))
    if ints and roll < 0.1:
        n = int(rng.integers(-4, 5))
        return n, dtype(n)
    if roll < 0.5:
        return value, value
    error = dtype(np.ldexp(rng.uniform(-1, 1), int(rng.integers(-40, -20))))
    return Twofold(value, error), value


def _random_dag(rng: np.random.Generator, width: int) -> None:
    """Evaluate one random expression DAG twice and compare the value lanes."""
    dtype = dtype_for(width)
    nodes = [_leaf(rng, dtype) for _ in range(3)]
    depth = int(rng.integers(1, 21))
    with np.errstate(all="ignore"):
        for _ in range(depth):
            op = rng.choice(["add", "sub", "mul", "div", "sqrt"])
            x, px = nodes[int(rng.integers(len(nodes)))]
            if op == "sqrt":
                result = arith.tsqrt(x) if isinstance(x, Twofold) else arith.tsqrt0(x)
                plain = np.sqrt(px)
            else:
                if rng.random() < 0.3:
                    y, py = _leaf(rng, dtype, ints=True)
                else:
                    y, py = nodes[int(rng.integers(len(nodes)))]
                result = T_OPS[op](x, y)
                plain = PLAIN_OPS[op](px, py)
            assert result.width == width
            assert identical(result.value, dtype(plain)), (op, x)
            nodes.append((result, dtype(plain)))


def test_value_lane_shadows_plain_floats(width):
    rng = np.random.default_rng(1000 + width)
    for _ in range(10_000):
        _random_dag(rng, width)


@given(finite, finite)
def test_tadd0_is_exact(a, b):
    z = arith.tadd0(a, b)
    if np.isfinite(z.value):
        assert to_fraction(z.value) + to_fraction(z.error) == Fraction(a) + Fraction(b)


@given(finite, errors, finite, errors)
def test_tsub_is_tadd_of_tneg(x0, x1, y0, y1):
    x, y = Twofold(x0, x1), Twofold(y0, y1)
    assert identical(arith.tsub(x, y), arith.tadd(x, arith.tneg(y)))
    assert identical(arith.tsub1(x, y0), arith.tadd1(x, -y0))
    assert identical(arith.tsub2(x0, y), arith.tadd2(x0, arith.tneg(y)))


@given(finite, errors, finite, errors)
def test_full_arity_matches_dispatch(x0, x1, y0, y1):
    x, y = Twofold(x0, x1), Twofold(y0, y1)
    full = Twofold(*arith.mul_lanes(x.value, x.error, y.value, y.error))
    assert identical(arith.tmul(x, y), full)
    assert identical(arith.tmul(x, y0), arith.tmul1(x, y0))
    assert identical(arith.tmul(x0, y), arith.tmul2(x0, y))
    assert identical(arith.tdiv(x0, y0), arith.tdiv0(x0, y0))


def test_tadd_folds_incoming_errors():
    z = arith.tadd(Twofold(1.0, 2.0**-60), Twofold(2.0**-53, 2.0**-61))
    assert z.value == 1.0
    assert z.error == 2.0**-53 + (2.0**-60 + 2.0**-61)


def test_tmul_error_formula():
    x = Twofold(1 + 2.0**-30, 2.0**-70)
    y = Twofold(1 - 2.0**-30, 0.0)
    z = arith.tmul(x, y)
    assert z.value == 1.0
    assert z.error == -(2.0**-60) + 2.0**-70 * (1 - 2.0**-30)


def test_tdiv_recovers_a_third():
    z = arith.tdiv0(1.0, 3.0)
    exact = to_fraction(z.value) + to_fraction(z.error)
    assert abs(exact - Fraction(1, 3)) < Fraction(1, 2**105)


def test_tdiv_by_zero():
    z = arith.tdiv(Twofold(1.0, 0.0), Twofold(0.0, 0.0))
    assert z.value == np.inf
    assert not np.isfinite(z.error)


def test_binary32_stays_binary32():
    z = arith.tmul(Twofold(np.float32(0.1), np.float32(0)), np.float32(3))
    assert isinstance(z.value, np.float32) and isinstance(z.error, np.float32)
    assert z.value == np.float32(0.1) * np.float32(3)
    assert arith.tadd(np.float32(1), 1.0).width == 64
    assert arith.tadd(np.float32(1), 1).width == 32


class TestSqrt:
    @pytest.mark.parametrize("propagation", list(SqrtPropagation))
    def test_negative_value_lane(self, propagation):
        z = arith.tsqrt(Twofold(-1.0, 0.0), propagation=propagation)
        assert np.isnan(z.value) and np.isnan(z.error)

    @pytest.mark.parametrize("propagation", list(SqrtPropagation))
    def test_negative_sum(self, propagation):
        z = arith.tsqrt(Twofold(0.0, -1e-20), propagation=propagation)
        assert z.value == 0.0
        assert np.isnan(z.error)

    @pytest.mark.parametrize("propagation", list(SqrtPropagation))
    def test_zero(self, propagation):
        assert identical(
            arith.tsqrt(Twofold(0.0, 0.0), propagation=propagation), Twofold(0.0, 0.0)
        )

    def test_infinity(self):
        z = arith.tsqrt(Twofold(np.inf, 0.0))
        assert z.value == np.inf

    def test_exact_vs_mirrored(self):
        x = Twofold(4.0, 1e-10)
        exact = arith.tsqrt(x)
        mirrored = arith.tsqrt(x, propagation=SqrtPropagation.MIRRORED)
        assert exact.value == mirrored.value == 2.0
        assert exact.error == pytest.approx(2.5e-11)
        assert mirrored.error == pytest.approx(-2.5e-11)

    def test_dotted_sqrt_error(self):
        z = arith.tsqrt0(2.0)
        exact = (to_fraction(z.value) + to_fraction(z.error)) ** 2
        assert abs(exact - 2) < Fraction(1, 2**100)
        assert identical(arith.tsqrt0(-1.0), Twofold(np.nan, np.nan))
        assert identical(arith.tsqrt(2.0), z)


class TestComparisons:
    def test_value_lanes_only(self):
        assert arith.teq(Twofold(1.0, 1e-20), Twofold(1.0, -1e-20))
        assert arith.tlt(Twofold(1.0), 2)
        assert arith.tge(np.float32(1), Twofold(1.0))

    @pytest.mark.parametrize(
        "compare",
        [arith.tlt, arith.tle, arith.tgt, arith.tge, arith.teq, arith.tne],
    )
    def test_nan_is_always_false(self, compare):
        nan = Twofold(np.nan, 0.0)
        assert compare(nan, 1.0) is False
        assert compare(1.0, nan) is False
        assert compare(nan, nan) is False

    def test_tne(self):
        assert arith.tne(Twofold(1.0), 2.0)
        assert not arith.tne(Twofold(1.0, 1e-20), 1)


class TestServiceFunctions:
    def test_tabs(self):
        assert identical(arith.tabs(Twofold(-2.0, 1e-20)), Twofold(2.0, -1e-20))
        assert identical(arith.tabs(Twofold(2.0, -1e-20)), Twofold(2.0, -1e-20))

    def test_tisinf_tisnan(self):
        assert arith.tisinf(Twofold(1.0, np.inf))
        assert not arith.tisinf(Twofold(1.0, 1.0))
        assert arith.tisnan(Twofold(1.0, np.nan))
        assert not arith.tisnan(Twofold(np.inf, 0.0))

    @pytest.mark.parametrize("func", [arith.tneg, arith.tabs, arith.tisinf])
    def test_require_a_twofold(self, func):
        with pytest.raises(TypeError, match="Expected a twofold"):
            func(1.0)


@pytest.mark.parametrize(
    "func, x, y",
    [
        (arith.tadd1, 1.0, 1.0),
        (arith.tadd2, Twofold(1.0), Twofold(1.0)),
        (arith.tmul0, Twofold(1.0), 1.0),
        (arith.tdiv0, 1.0, Twofold(1.0)),
        (arith.tsub1, 1.0, Twofold(1.0)),
    ],
)
def test_arity_mismatch(func, x, y):
    with pytest.raises(TypeError, match="Expected a"):
        func(x, y)


def test_rejects_non_numbers():
    with pytest.raises(TypeError):
        arith.tadd(Twofold(1.0), "1")
    with pytest.raises(TypeError):
        arith.tsqrt0(Twofold(1.0))
    assert value_of(arith.tadd(2, 3)) == 5.0


LANE_KERNELS = {
    "add": (arith.add_lanes, operator.add),
    "sub": (arith.sub_lanes, operator.sub),
    "mul": (arith.mul_lanes, operator.mul),
    "div": (arith.div_lanes, operator.truediv),
}


def rounded_twofolds(rng: np.random.Generator, n: int, width: int):
    """Value lanes over a few decades, error lanes within an ulp of them."""
    dtype = dtype_for(width)
    u = unit_roundoff(width)
    values = np.ldexp(rng.uniform(0.5, 1.0, n), rng.integers(-20, 20, n))
    values = np.where(rng.random(n) < 0.5, -values, values).astype(dtype)
    errors = (values * rng.uniform(-u, u, n)).astype(dtype)
    return values, errors


@pytest.mark.parametrize("op", sorted(LANE_KERNELS))
def test_error_lane_bound(width, op):
    kernel, exact_op = LANE_KERNELS[op]
    rng = np.random.default_rng(width + sorted(LANE_KERNELS).index(op))
    x0, x1 = rounded_twofolds(rng, 5000, width)
    y0, y1 = rounded_twofolds(rng, 5000, width)
    z0, z1 = kernel(x0, x1, y0, y1)
    bound = ERROR_BOUNDS[op] * Fraction(unit_roundoff(width)) ** 2
    failures = []
    for a0, a1, b0, b1, c0, c1 in lane_rows(x0, x1, y0, y1, z0, z1):
        x, y = a0 + a1, b0 + b1
        exact = exact_op(x, y)
        scale = abs(x) + abs(y) if op in ("add", "sub") else abs(exact)
        if abs(c0 + c1 - exact) > bound * scale:
            failures.append((a0, a1, b0, b1))
    assert failures == []


def test_sqrt_error_lane_bound(width):
    rng = np.random.default_rng(width + 9)
    x0, x1 = rounded_twofolds(rng, 5000, width)
    x0, x1 = np.abs(x0), np.where(x0 < 0, -x1, x1)
    z0, z1 = arith.sqrt_lanes(x0, x1)
    # |z - sqrt(x)| <= C u**2 sqrt(x) is |z**2 - x| <= 2 C u**2 x to first order
    bound = 2 * ERROR_BOUNDS["sqrt"] * Fraction(unit_roundoff(width)) ** 2
    failures = [
        (a0, a1)
        for a0, a1, c0, c1 in lane_rows(x0, x1, z0, z1)
        if abs((c0 + c1) ** 2 - (a0 + a1)) > bound * (a0 + a1)
    ]
    assert failures == []


@given(finite, errors, finite, errors, errors, errors)
def test_comparisons_ignore_error_lanes(x0, x1, y0, y1, dx, dy):
    x, y = Twofold(x0, x1), Twofold(y0, y1)
    moved_x, moved_y = Twofold(x0, x1 + dx), Twofold(y0, y1 + dy)
    for compare in [arith.tlt, arith.tle, arith.tgt, arith.tge, arith.teq, arith.tne]:
        assert compare(x, y) == compare(moved_x, moved_y)
        assert compare(x, y0) == compare(moved_x, y0)
