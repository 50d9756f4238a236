import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracle import SCALE, scaled
from twofold import eft
from twofold.eft import (
    as_dotted,
    dadd,
    ddiv,
    dfma,
    dmul,
    dneg,
    dsqrt,
    dsub,
    dtype_for,
    fast_two_sum,
    round_fraction,
    two_prod,
    two_sum,
    ulp,
    unit_roundoff,
    width_of,
)

finite64 = st.floats(allow_nan=False, allow_infinity=False, width=64)
finite32 = st.floats(allow_nan=False, allow_infinity=False, width=32)


def random_pairs(n: int, width: int, seed: int, spread: int = 40):
    rng = np.random.default_rng(seed)
    dtype = dtype_for(width)
    # mantissas of at least 1/2 keep products clear of underflow
    a = np.ldexp(rng.uniform(0.5, 1.0, n), rng.integers(-spread, spread, n))
    b = np.ldexp(rng.uniform(0.5, 1.0, n), rng.integers(-spread, spread, n))
    a = np.where(rng.random(n) < 0.5, -a, a)
    b = np.where(rng.random(n) < 0.5, -b, b)
    # a quarter of the pairs cancel heavily
    near = rng.random(n) < 0.25
    b = np.where(near, -a * (1 + rng.uniform(-1e-6, 1e-6, n)), b)
    return a.astype(dtype), b.astype(dtype)


def subnormal_pairs(n: int, width: int, seed: int):
    rng = np.random.default_rng(seed)
    dtype = dtype_for(width)
    info = np.finfo(dtype)
    # exponents straddle the normal/subnormal boundary
    low = int(np.log2(info.smallest_subnormal))
    high = int(np.log2(info.tiny)) + 2
    a = np.ldexp(rng.uniform(-1.0, 1.0, n), rng.integers(low, high, n))
    b = np.ldexp(rng.uniform(-1.0, 1.0, n), rng.integers(low, high, n))
    return a.astype(dtype), b.astype(dtype)


def test_widths():
    assert width_of(1.0) == 64
    assert width_of(1) == 64
    assert width_of(np.float32(1)) == 32
    assert width_of(np.zeros(3, np.float32)) == 32
    assert unit_roundoff(32) == 2.0**-24
    assert unit_roundoff(64) == 2.0**-53


@pytest.mark.parametrize("bad", [True, "1.0", None, np.float16(1)])
def test_width_of_type_error(bad):
    with pytest.raises(TypeError):
        width_of(bad)


def test_dtype_for_value_error():
    with pytest.raises(ValueError, match="Expected width 32 or 64"):
        dtype_for(16)


def test_round_fraction_binary32_single_rounding():
    # 1 + 2**-24 + 2**-60 is above the binary32 midpoint; a double rounding
    # through binary64 would land on the midpoint and round down to 1
    q = 1 + Fraction(1, 2**24) + Fraction(1, 2**60)
    assert round_fraction(q, 32) == np.float32(1 + 2**-23)
    assert round_fraction(Fraction(1, 10), 32) == np.float32(0.1)
    assert round_fraction(Fraction(10) ** 400, 64) == np.inf


def test_as_dotted_ints_are_rounded_once():
    assert as_dotted(2**24 + 1, 32) == np.float32(2**24)
    assert as_dotted(3) == np.float64(3)
    assert isinstance(as_dotted(3, 32), np.float32)


def test_two_sum_exact_sweep(width, oracle_cases):
    a, b = random_pairs(oracle_cases, width, seed=width)
    c, d = subnormal_pairs(max(oracle_cases // 10, 100), width, seed=width + 2)
    a, b = np.concatenate([a, c]), np.concatenate([b, d])
    assert np.count_nonzero(np.abs(a) < np.finfo(a.dtype).tiny) > 0
    hi, lo = two_sum(a, b)
    assert np.array_equal(hi, a + b)
    failures = [
        (x, y)
        for x, y, h, l in zip(a.tolist(), b.tolist(), hi.tolist(), lo.tolist())
        if scaled(h) + scaled(l) != scaled(x) + scaled(y)
    ]
    assert failures == []


def test_two_prod_exact_sweep(width, oracle_cases):
    a, b = random_pairs(oracle_cases, width, seed=width + 1)
    hi, lo = two_prod(a, b)
    assert np.array_equal(hi, a * b)
    failures = [
        (x, y)
        for x, y, h, l in zip(a.tolist(), b.tolist(), hi.tolist(), lo.tolist())
        if scaled(h, SCALE**2) + scaled(l, SCALE**2) != scaled(x) * scaled(y)
    ]
    assert failures == []


@given(finite64, finite64)
def test_two_sum_exact_binary64(a, b):
    hi, lo = two_sum(np.float64(a), np.float64(b))
    if math.isfinite(hi):
        assert Fraction(float(hi)) + Fraction(float(lo)) == Fraction(a) + Fraction(b)


@given(finite32, finite32)
def test_two_sum_exact_binary32(a, b):
    hi, lo = two_sum(np.float32(a), np.float32(b))
    assert isinstance(hi, np.float32) and isinstance(lo, np.float32)
    if np.isfinite(hi):
        assert Fraction(float(hi)) + Fraction(float(lo)) == Fraction(a) + Fraction(b)


@given(finite32, finite32)
def test_two_prod_exact_binary32(a, b):
    exact_product = Fraction(a) * Fraction(b)
    if exact_product != 0 and abs(exact_product) < 2.0**-100:
        return  # the low part would underflow
    hi, lo = two_prod(np.float32(a), np.float32(b))
    if np.isfinite(hi):
        assert Fraction(float(hi)) + Fraction(float(lo)) == exact_product


@given(finite64, finite64)
def test_fast_two_sum_exact_when_ordered(a, b):
    if abs(a) < abs(b):
        a, b = b, a
    hi, lo = fast_two_sum(np.float64(a), np.float64(b))
    if math.isfinite(hi):
        assert Fraction(float(hi)) + Fraction(float(lo)) == Fraction(a) + Fraction(b)


@given(finite64, finite64, finite64)
def test_dfma_single_rounding_binary64(a, b, c):
    q = Fraction(a) * Fraction(b) + Fraction(c)
    if abs(q) > 2**1000:
        return
    assert dfma(np.float64(a), np.float64(b), np.float64(c)) == round_fraction(q, 64)


@given(finite32, finite32, finite32)
def test_dfma_single_rounding_binary32(a, b, c):
    q = Fraction(a) * Fraction(b) + Fraction(c)
    if abs(q) > 2**120:
        return
    assert dfma(np.float32(a), np.float32(b), np.float32(c)) == round_fraction(q, 32)


def test_dfma_arrays_match_scalars(width):
    a, b = random_pairs(1000, width, seed=7)
    c = -(a * b)
    vector = dfma(a, b, c)
    assert vector.dtype == dtype_for(width)
    assert [dfma(x, y, z) for x, y, z in zip(a, b, c)] == list(vector)


def test_dfma_binary64_scalars():
    one = np.float64(1 + 2.0**-52)
    residual = dfma(one, np.float64(1 - 2.0**-52), np.float64(-1.0))
    assert isinstance(residual, np.float64)
    assert residual == -(2.0**-104)
    assert math.isnan(dfma(np.float64(np.inf), np.float64(0.0), np.float64(1.0)))
    assert dfma(1e300, 1e300, 1.0) == np.inf
    assert dfma(-1e300, 1e300, 1.0) == -np.inf


def test_dotted_primitives():
    assert dmul(np.float32(0.1), np.float32(10)) == np.float32(1.0)
    assert isinstance(dmul(np.float32(0.1), np.float32(10)), np.float32)
    assert dfma(2, 3, -6) == 0
    assert math.isnan(dsqrt(np.float64(-1)))
    assert dadd(np.float64(0.1), np.float64(0.2)) == 0.1 + 0.2
    assert dsub(np.float32(1), np.float32(2.0**-25)) == np.float32(1)
    assert ddiv(np.float64(1), np.float64(0)) == np.inf
    assert dneg(np.float32(2)) == np.float32(-2)


def test_overflow_rounds_to_infinity():
    huge = Fraction(10) ** 400
    assert round_fraction(huge, 32) == np.inf
    assert round_fraction(-huge, 32) == -np.inf
    assert round_fraction(-huge, 64) == -np.inf
    assert isinstance(round_fraction(-huge, 32), np.float32)


def test_ulp():
    assert ulp(np.float64(1)) == 2.0**-52
    assert ulp(np.float32(-1)) == np.float32(2.0**-23)


def test_check_environment_passes():
    eft.check_environment()


def test_check_environment_rejects_unfused_fma(monkeypatch):
    monkeypatch.setattr(eft, "dfma", lambda a, b, c: a * b + c)
    with pytest.raises(eft.FloatEnvironmentError, match="not fused"):
        eft.check_environment()
