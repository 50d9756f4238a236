from fractions import Fraction

import numpy as np
import pytest

from twofold import coupled
from twofold.arith import SqrtPropagation, tadd
from twofold.kind import (
    KIND_NAMES,
    BaseKind,
    CoupledKind,
    DottedKind,
    TwofoldKind,
    get_kind,
)
from twofold.number import Coupled, Shape, Twofold, identical, shape_of


def test_names():
    assert KIND_NAMES == (
        "dotted32",
        "dotted64",
        "twofold32",
        "twofold64",
        "coupled32",
        "coupled64",
    )
    for name in KIND_NAMES:
        assert get_kind(name).name == name


def test_get_kind():
    assert isinstance(get_kind("dotted32"), DottedKind)
    assert isinstance(get_kind("coupled64"), CoupledKind)
    kind = get_kind("twofold32", sqrt_propagation=SqrtPropagation.MIRRORED)
    assert isinstance(kind, TwofoldKind)
    assert kind.sqrt_propagation is SqrtPropagation.MIRRORED
    assert repr(kind) == "TwofoldKind(width=32)"


@pytest.mark.parametrize("name", ["twofold", "twofold16", "quad64", ""])
def test_unknown_kind(name):
    with pytest.raises(ValueError, match="Expected one of"):
        get_kind(name)


def test_base_kind_is_abstract():
    with pytest.raises(TypeError):
        BaseKind(64)
    with pytest.raises(ValueError):
        DottedKind(16)


def test_from_number_shape_and_width(kind):
    x = kind.from_number("0.1")
    assert shape_of(x) is kind.shape
    assert kind.value_of(x) == kind.constant(Fraction(1, 10))
    assert isinstance(kind.value_of(x), np.float32 if kind.width == 32 else np.float64)
    if kind.shape is not Shape.DOTTED:
        assert kind.error_of(x) != 0
        assert kind.error_of(kind.truncate(x)) == 0


def test_small_integers_are_exact(kind):
    two, three = kind.from_number(2), kind.from_number(3)
    assert kind.eq(kind.add(two, three), kind.from_number(5))
    assert kind.eq(kind.sub(two, three), kind.neg(kind.from_number(1)))
    assert kind.eq(kind.mul(two, three), kind.from_number(6))
    assert kind.eq(kind.div(kind.from_number(6), three), two)
    assert kind.eq(kind.sqrt(kind.from_number(4)), two)
    assert kind.eq(kind.abs(kind.neg(two)), two)
    assert kind.lt(two, three) and kind.gt(three, two)
    assert kind.is_zero(kind.sub(two, two))
    assert not kind.is_zero(two)


def test_constants_mix_with_numbers(kind):
    x = kind.mul(kind.constant(21), kind.from_number(2))
    assert kind.value_of(x) == 42
    assert kind.value_of(kind.constant(Fraction(1, 3))) == kind.value_of(
        kind.from_number(Fraction(1, 3))
    )


def test_dotted_running_sum_is_the_plain_loop():
    kind = get_kind("dotted32")
    term = kind.from_number(0.1)
    total = np.float32(0)
    for _ in range(1000):
        total = total + term
    assert identical(kind.running_sum(term, 1000), total)


def test_twofold_running_sum_is_a_tadd_fold(twofold_kind):
    term = twofold_kind.from_number("0.1")
    total = twofold_kind.from_number(0)
    for _ in range(1000):
        total = tadd(total, term)
    assert identical(twofold_kind.running_sum(term, 1000), total)
    assert "running_sum" in BaseKind.__abstractmethods__


@pytest.mark.parametrize("width", [32, 64])
def test_coupled_running_sum_is_a_padd_fold(width):
    kind = get_kind(f"coupled{width}")
    term = kind.from_number("0.1")
    total = kind.from_number(0)
    for _ in range(500):
        total = coupled.padd(total, term)
    result = kind.running_sum(term, 500)
    assert isinstance(result, Coupled)
    assert identical(result, total)


def test_coupled_kind_compares_lexicographically():
    kind = get_kind("coupled64")
    low, high = Coupled(1.0, -(2.0**-60)), Coupled(1.0, 0.0)
    assert kind.lt(low, high)
    assert not kind.eq(low, high)
    assert get_kind("twofold64").eq(low, high)


def test_twofold_kind_sqrt_propagation():
    x = Twofold(4.0, 1e-10)
    exact = get_kind("twofold64").sqrt(x)
    mirrored = get_kind("twofold64", sqrt_propagation=SqrtPropagation.MIRRORED).sqrt(x)
    assert exact.error == -mirrored.error


def test_dotted_kind_ieee_specials():
    kind = get_kind("dotted64")
    assert kind.div(kind.from_number(1), kind.from_number(0)) == np.inf
    assert np.isnan(kind.sqrt(kind.from_number(-1)))
