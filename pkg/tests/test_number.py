from fractions import Fraction

import numpy as np
import pytest

from twofold import Coupled, Twofold, convert, identical
from twofold.eft import round_fraction, to_fraction
from twofold.number import Shape, error_of, shape_of, value_of


def test_default_error_lane_is_zero_of_value_width():
    x = Twofold(np.float32(1.5))
    assert x.width == 32
    assert isinstance(x.error, np.float32) and x.error == 0


def test_ints_take_the_partner_width():
    assert Twofold(np.float32(1), 0).width == 32
    assert Twofold(3, 1).width == 64
    assert isinstance(Twofold(3, 1).value, np.float64)


def test_mixed_widths_promote():
    x = Twofold(np.float32(1), 1e-9)
    assert x.width == 64
    assert x.error == 1e-9


@pytest.mark.parametrize("width", [32, 64])
def test_from_number_decimal_string_is_exact_to_first_order(width):
    x = Twofold.from_number("0.1", width)
    assert x.width == width
    remainder = Fraction(1, 10) - to_fraction(x.value)
    assert x.error == round_fraction(remainder, width)
    assert x.value == (np.float32(0.1) if width == 32 else 0.1)
    assert x.error != 0


def test_from_number_fraction():
    x = Twofold.from_number(Fraction(1, 3), 64)
    assert x.value == 1 / 3
    assert abs(to_fraction(x.value) + to_fraction(x.error) - Fraction(1, 3)) < Fraction(
        1, 2**106
    )


def test_from_number_exact_int_is_split():
    x = Twofold.from_number(2**24 + 1, 32)
    assert x.value == np.float32(2**24)
    assert x.error == np.float32(1)


@pytest.mark.parametrize("text", ["nan", "inf", "-inf"])
def test_from_number_non_finite_strings(text):
    x = Twofold.from_number(text, 32)
    assert identical(x, Twofold(np.float32(float(text)), np.float32(0)))


def test_from_number_rejects_garbage():
    with pytest.raises(TypeError, match="Expected a real number"):
        Twofold.from_number("one tenth")


def test_from_number_coupled_is_renormalized():
    x = Coupled.from_number(Twofold(1.0, 1.0))
    assert isinstance(x, Coupled)
    assert identical(x, Twofold(2.0, 0.0))


def test_convert_narrowing_keeps_the_discarded_part():
    x = convert(Twofold(1 + 2.0**-30, 2.0**-40), 32)
    assert x.value == np.float32(1)
    assert x.error == np.float32(2.0**-30 + 2.0**-40)


def test_convert_widening_is_exact():
    x = convert(Twofold(np.float32(0.1), np.float32(1e-9)), 64)
    assert x.value == float(np.float32(0.1))
    assert x.error == float(np.float32(1e-9))


def test_convert_dotted_and_overflowing():
    assert identical(convert(0.5, 32), Twofold(np.float32(0.5), np.float32(0)))
    big = convert(1e300, 32)
    assert identical(big, Twofold(np.float32(np.inf), np.float32(0)))
    small = convert(Twofold(-1e300, 1e283), 32)
    assert identical(small, Twofold(np.float32(-np.inf), np.float32(0)))
    assert convert(np.float64(np.nan), 32).width == 32


def test_overflowing_numbers_keep_their_sign():
    assert identical(convert(10**400, 64), Twofold(np.inf, 0.0))
    assert identical(convert(-(10**400), 32), Twofold(np.float32(-np.inf)))
    assert identical(Twofold.from_number("-1e400"), Twofold(-np.inf, 0.0))
    assert Twofold.from_number(Fraction(-(10**40)), 32).value == -np.inf


def test_identical():
    assert identical(Twofold(np.nan, 1.0), Twofold(-np.nan, 1.0))
    assert not identical(Twofold(0.0), Twofold(-0.0))
    assert not identical(Twofold(np.float32(1)), Twofold(1.0))
    assert identical(1.0, Twofold(1.0, 0.0))
    assert not identical(Twofold(1.0, 1e-20), Twofold(1.0, 2e-20))


def test_shape_helpers():
    assert shape_of(1.0) is Shape.DOTTED
    assert shape_of(np.float32(1)) is Shape.DOTTED
    assert shape_of(Twofold(1.0)) is Shape.TWOFOLD
    assert shape_of(Coupled(1.0, 0.0)) is Shape.COUPLED
    assert value_of(2) == 2.0
    assert error_of(np.float32(2)).dtype == np.float32
    with pytest.raises(TypeError):
        shape_of("1.0")


def test_operators_route_to_arith():
    x = Twofold(1.0, 1e-20)
    assert identical(x + 1, Twofold(2.0, 1e-20))
    assert identical(1 - x, Twofold(0.0, -1e-20))
    assert identical(-x, Twofold(-1.0, -1e-20))
    assert identical(abs(-x), x)
    assert identical(+x, x)
    assert (x * 2).error == 2e-20
    assert (2 / Twofold(4.0)).value == 0.5


def test_comparisons_use_value_lanes():
    x = Twofold(1.0, 1e-20)
    assert x == 1.0
    assert not x != 1
    assert x < 2 and x <= 1 and x >= 1 and not x > 1
    assert not Twofold(np.nan) == Twofold(np.nan)
    assert not Twofold(np.nan) != 1.0


def test_unsupported_operands():
    with pytest.raises(TypeError):
        Twofold(1.0) + "1"
    assert Twofold(1.0).__add__(None) is NotImplemented


def test_float_hash_and_text():
    x = Twofold(np.float32(np.pi), np.float32(-8.742278e-08))
    assert float(x) == float(np.float32(np.pi))
    assert hash(x) == hash(float(np.float32(np.pi)))
    assert str(x) == "3.14159[-8.74228e-08]"
    assert repr(x) == "Twofold(3.14159[-8.74228e-08])"
    assert x.compensated() == np.float32(np.pi) + np.float32(-8.742278e-08)
