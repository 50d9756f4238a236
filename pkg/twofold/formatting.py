"""Text form of twofold numbers: `VALUE[ERROR]`.

Decimal mode prints each lane with a number of significant digits (6 by
default, `%g` style). Bit-exact mode prints hexadecimal float literals and
round-trips through `parse_twofold`; NaN lanes round-trip as NaN without their
sign or payload.
"""
import re
import typing as tp
from fractions import Fraction

import attr

from twofold.eft import Dotted, dtype_for, round_fraction
from twofold.exceptions import ParseError
from twofold.number import Shape, Twofold, error_of, shape_of, value_of


_TWOFOLD_RE = re.compile(
    r"^\s*(?P<value>[^\[\]\s]+)\s*(?:\[\s*(?P<error>[^\[\]\s]+)\s*\])?\s*$"
)
_NON_FINITE = ("nan", "inf", "infinity")


def _positive(instance: tp.Any, attribute: attr.Attribute, value: int) -> None:
    if value < 1:
        raise ValueError(f"'{attribute.name}' must be >= 1, got {value}")


@attr.s(frozen=True, slots=True)
class FormatOptions:
    """How `format_twofold` prints lanes.

    Args:
        digits: significant digits per lane in decimal mode.
        bit_exact: print hexadecimal float literals instead of decimals.
    """

    digits: int = attr.ib(
        default=6, kw_only=True, validator=[attr.validators.instance_of(int), _positive]
    )
    bit_exact: bool = attr.ib(default=False, kw_only=True)


DEFAULT_OPTIONS = FormatOptions()
BIT_EXACT = FormatOptions(bit_exact=True)


def format_lane(x: Dotted, options: FormatOptions = DEFAULT_OPTIONS) -> str:
    if options.bit_exact:
        return float.hex(float(x))
    return format(float(x), f".{options.digits}g")


def format_twofold(x: tp.Any, options: tp.Optional[FormatOptions] = None) -> str:
    """Format a number as `VALUE[ERROR]`; dotted numbers print their value alone.

    Args:
        x: dotted, twofold or coupled number.
        options: FormatOptions, defaults to 6 significant digits.

    Returns:
        str, e.g. "3.14159[-8.74228e-08]"
    """
    options = options or DEFAULT_OPTIONS
    if shape_of(x) is Shape.DOTTED:
        return format_lane(value_of(x), options)
    return f"{format_lane(x.value, options)}[{format_lane(x.error, options)}]"


def _parse_lane(text: str, width: int) -> Dotted:
    dtype = dtype_for(width)
    lowered = text.lower()
    try:
        if lowered.lstrip("+-") in _NON_FINITE:
            return dtype(float(lowered))
        if "0x" in lowered:
            return dtype(float.fromhex(text))
        lane = round_fraction(Fraction(text), width)
    except (ValueError, ZeroDivisionError, OverflowError) as error:
        raise ParseError(f"Invalid lane {text!r}: {error}") from error
    if lane == 0 and lowered.startswith("-"):
        return -lane
    return lane


def parse_twofold(text: str, width: int = 64) -> Twofold:
    """Parse `VALUE[ERROR]` (or a bare `VALUE`) into a twofold.

    Lanes may be decimal (rounded once, to nearest) or hexadecimal float
    literals, plus `nan`, `inf` and `-inf`.

    Args:
        text: the literal.
        width: 32 or 64, width of the result.

    Raises:
        ParseError: if text is not a twofold literal.

    Returns:
        Twofold
    """
    if not isinstance(text, str):
        raise TypeError(f"Expected str, got {type(text)}")
    match = _TWOFOLD_RE.match(text)
    if match is None:
        raise ParseError(f"Expected 'VALUE[ERROR]', got {text!r}")
    value = _parse_lane(match["value"], width)
    error = match["error"]
    if error is None:
        return Twofold(value, dtype_for(width)(0))
    return Twofold(value, _parse_lane(error, width))


def lane_fields(x: tp.Any) -> tp.Dict[str, str]:
    """Hex and decimal renderings of both lanes, for structured records."""
    value, error = value_of(x), error_of(x)
    return {
        "value_hex": format_lane(value, BIT_EXACT),
        "error_hex": format_lane(error, BIT_EXACT),
        "value_dec": repr(float(value)),
        "error_dec": repr(float(error)),
    }
