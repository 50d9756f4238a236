"""Error-free transformations and dotted primitives.

Every twofold and coupled operation is built from the functions in this module.
They accept numpy scalars or numpy arrays of one float width (binary32 or
binary64) and apply elementwise, so one kernel serves both the scalar types and
the structure-of-arrays slices.

Python never reassociates or contracts floating-point expressions, so writing
`(a + b) - b` here really evaluates it; no compiler flags are involved.
"""
import logging
import typing as tp
from fractions import Fraction

import numpy as np
import pyfma

from twofold.exceptions import FloatEnvironmentError

logger = logging.getLogger(__name__)

Dotted = tp.Union[np.float32, np.float64]
Lane = tp.Any
EftPair = tp.Tuple[Lane, Lane]

WIDTHS: tp.Dict[int, tp.Type[np.floating]] = {32: np.float32, 64: np.float64}
_MANTISSA_BITS = {32: 24, 64: 53}

def dtype_for(width: int) -> tp.Type[np.floating]:
    """Numpy scalar type of a width (32 or 64)."""
    try:
        return WIDTHS[width]
    except KeyError:
        raise ValueError(f"Expected width 32 or 64, got {width!r}") from None

def width_of(x: tp.Any) -> int:
    """Width in bits of a dotted number or lane array.

    Python floats and ints count as binary64.
    """
    if isinstance(x, (bool, np.bool_)):
        raise TypeError(f"Expected a float or an int, got {type(x)}")
    if isinstance(x, (int, float)) and not isinstance(x, np.generic):
        return 64
    dtype = getattr(x, "dtype", None)
    if dtype == np.float32:
        return 32
    if dtype == np.float64:
        return 64
    raise TypeError(f"Expected a binary32 or binary64 number, got {type(x)}")

def unit_roundoff(width: int) -> float:
    """Half the ulp of one: 2**-24 for binary32, 2**-53 for binary64."""
    return 2.0 ** -_MANTISSA_BITS[width]

def round_fraction(q: Fraction, width: int) -> Dotted:
    """Round an exact rational to the nearest float of a width, ties to even."""
    if width == 64:
        try:
            return np.float64(float(q))
        except OverflowError:
            return np.float64(-np.inf if q < 0 else np.inf)
    try:
        with np.errstate(over="ignore"):
            candidate = np.float32(float(q))
    except OverflowError:
        return np.float32(-np.inf if q < 0 else np.inf)
    if not np.isfinite(candidate):
        return candidate
    # float(q) rounded once already, the cast to binary32 may round a second time
    best = candidate
    best_gap = abs(Fraction(float(candidate)) - q)
    for toward in (-np.inf, np.inf):
        neighbour = np.nextafter(candidate, np.float32(toward))
        if not np.isfinite(neighbour):
            continue
        gap = abs(Fraction(float(neighbour)) - q)
        if gap < best_gap or (gap == best_gap and _is_even(neighbour)):
            best, best_gap = neighbour, gap
    return best

def _is_even(x: np.float32) -> bool:
    return int(np.asarray(x).view(np.uint32)) & 1 == 0

def as_dotted(x: tp.Any, width: tp.Optional[int] = None) -> Dotted:
    """Convert a number to a dotted numpy scalar.

    Ints are converted exactly-rounded into the requested width (binary64 by
    default). Floats keep their width unless one is requested, in which case a
    single IEEE conversion is applied.
    """
    if isinstance(x, (bool, np.bool_)):
        raise TypeError(f"Expected a float or an int, got {type(x)}")
    if isinstance(x, (int, np.integer)):
        return round_fraction(Fraction(int(x)), width or 64)
    if width is None:
        width = width_of(x)
    return dtype_for(width)(x)

def to_fraction(x: tp.Any) -> Fraction:
    """Exact rational value of a finite dotted number."""
    return Fraction(float(x))

# Dotted primitives: one IEEE rounding each.

def dadd(a: Lane, b: Lane) -> Lane:
    return a + b

def dsub(a: Lane, b: Lane) -> Lane:
    return a - b

def dmul(a: Lane, b: Lane) -> Lane:
    return a * b

def ddiv(a: Lane, b: Lane) -> Lane:
    with np.errstate(divide="ignore", invalid="ignore"):
        return a / b

def dsqrt(a: Lane) -> Lane:
    with np.errstate(invalid="ignore"):
        return np.sqrt(a)

def dneg(a: Lane) -> Lane:
    return -a

def _fma64(a: Lane, b: Lane, c: Lane) -> Lane:
    with np.errstate(all="ignore"):
        r = pyfma.fma(
            np.asarray(a, np.float64),
            np.asarray(b, np.float64),
            np.asarray(c, np.float64),
        )
    return np.asarray(r, dtype=np.float64)[()]

def _fma32(a: Lane, b: Lane, c: Lane) -> Lane:
    """Binary32 FMA through exact binary64 products.

    The product of two binary32 numbers is exact in binary64, so only the final
    addition rounds twice. The second rounding is wrong only when the binary64 sum
    lands exactly on a binary32 midpoint while the discarded residual is nonzero;
    that case is moved toward the residual's sign.
    """
    a64 = np.asarray(a, dtype=np.float64)
    b64 = np.asarray(b, dtype=np.float64)
    c64 = np.asarray(c, dtype=np.float64)
    with np.errstate(all="ignore"):
        p = a64 * b64
        s, e = two_sum(p, c64)
        r = s.astype(np.float32)
        back = r.astype(np.float64)
        toward = np.nextafter(
            r, np.where(back < s, np.float32(np.inf), np.float32(-np.inf))
        )
        toward64 = toward.astype(np.float64)
        midpoint = (back + toward64) * 0.5
        tie = (back != s) & (midpoint == s) & (e != 0)
        pick = tie & ((toward64 > back) == (e > 0))
        return np.where(pick, toward, r).astype(np.float32)[()]

def dfma(a: Lane, b: Lane, c: Lane) -> Lane:
    """fl(a*b + c) with a single rounding."""
    dtype = np.result_type(a, b, c)
    if dtype == np.float32:
        return _fma32(a, b, c)
    return _fma64(a, b, c)

# Error-free transformations.

def two_sum(a: Lane, b: Lane) -> EftPair:
    """Knuth's branch-free sum: hi = fl(a+b) and hi + lo = a + b exactly.

    Exactness holds for finite inputs whose sum does not overflow; non-finite
    inputs propagate and may leave lo as NaN.
    """
    s = a + b
    t = s - b
    e1 = a - t
    t2 = s - t
    e2 = b - t2
    return s, e1 + e2

def fast_two_sum(a: Lane, b: Lane) -> EftPair:
    """Dekker's sum, exact when |a| >= |b| or a == 0.

    The precondition is the caller's responsibility; violating it gives an
    unspecified pair.
    """
    s = a + b
    return s, b - (s - a)

def two_prod(a: Lane, b: Lane) -> EftPair:
    """hi = fl(a*b), lo = fl(fma(a, b, -hi)).

    hi + lo = a*b exactly unless the exact product underflows into the
    subnormal range.
    """
    hi = a * b
    return hi, dfma(a, b, -hi)

def ulp(x: Lane) -> Lane:
    """Unit in the last place at the magnitude of x."""
    return np.spacing(np.abs(x))

def check_environment() -> None:
    """Assert round-to-nearest-even and a genuinely fused FMA for both widths.

    Raises:
        FloatEnvironmentError: if either property does not hold.
    """
    for width, dtype in WIDTHS.items():
        one = dtype(1)
        eps = dtype(2.0 ** (1 - _MANTISSA_BITS[width]))
        half = eps / dtype(2)
        if one + half != one or -one - half != -one:
            raise FloatEnvironmentError(
                f"binary{width} addition does not round ties to even"
            )
        if one + dtype(3) * half != one + dtype(2) * eps:
            raise FloatEnvironmentError(
                f"binary{width} addition does not round to nearest"
            )
        residual = dfma(one + eps, one - eps, -one)
        if residual != -(eps * eps):
            raise FloatEnvironmentError(
                f"binary{width} fma is not fused: got {residual!r} for (1+e)(1-e)-1"
            )
    logger.debug("Float environment ok, binary64 fma through pyfma")


check_environment()
