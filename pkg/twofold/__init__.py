from twofold.arith import (
    SqrtPropagation,
    tabs,
    tadd,
    tadd0,
    tadd1,
    tadd2,
    tdiv,
    tdiv0,
    tdiv1,
    tdiv2,
    teq,
    tge,
    tgt,
    tisinf,
    tisnan,
    tle,
    tlt,
    tmul,
    tmul0,
    tmul1,
    tmul2,
    tne,
    tneg,
    tsqrt,
    tsqrt0,
    tsub,
    tsub0,
    tsub1,
    tsub2,
)
from twofold.coupled import (
    fast_add0,
    fast_renorm,
    fast_sub0,
    pabs,
    padd,
    padd0,
    padd1,
    padd2,
    pdiv,
    pdiv0,
    pdiv1,
    pdiv2,
    peq,
    pge,
    pgt,
    pisinf,
    pisnan,
    ple,
    plt,
    pmul,
    pmul0,
    pmul1,
    pmul2,
    pne,
    pneg,
    psqrt,
    psqrt0,
    psub,
    psub0,
    psub1,
    psub2,
    renormalize,
    tdivp,
    tmulp,
    tsqrtp,
)
from twofold.eft import (
    dadd,
    ddiv,
    dfma,
    dmul,
    dneg,
    dsqrt,
    dsub,
    fast_two_sum,
    two_prod,
    two_sum,
    ulp,
)
from twofold.exceptions import (
    FloatEnvironmentError,
    ParseError,
    ScenarioError,
    ShapeMismatchError,
    SingularMatrixError,
    TwofoldError,
)
from twofold.formatting import FormatOptions, format_twofold, parse_twofold
from twofold.functions import fabs, isinf, isnan, sqrt
from twofold.number import (
    Coupled,
    Shape,
    Twofold,
    convert,
    error_of,
    identical,
    shape_of,
    value_of,
)
from twofold.reductions import (
    Accumulator,
    TwofoldArray,
    plain_dot,
    plain_sum,
    tadd_slice,
    tdiv_slice,
    tdot,
    tmul_slice,
    tsqrt_slice,
    tsub_slice,
    tsum,
    tsum_twofold,
)


__all__ = [
    "Twofold",
    "Coupled",
    "Shape",
    "SqrtPropagation",
    "FormatOptions",
    "value_of",
    "error_of",
    "shape_of",
    "identical",
    "convert",
    "format_twofold",
    "parse_twofold",
    "dadd",
    "dsub",
    "dmul",
    "ddiv",
    "dsqrt",
    "dneg",
    "dfma",
    "two_sum",
    "fast_two_sum",
    "two_prod",
    "ulp",
    "tadd",
    "tadd0",
    "tadd1",
    "tadd2",
    "tsub",
    "tsub0",
    "tsub1",
    "tsub2",
    "tmul",
    "tmul0",
    "tmul1",
    "tmul2",
    "tdiv",
    "tdiv0",
    "tdiv1",
    "tdiv2",
    "tsqrt",
    "tsqrt0",
    "tneg",
    "tabs",
    "tisinf",
    "tisnan",
    "tlt",
    "tle",
    "tgt",
    "tge",
    "teq",
    "tne",
    "padd",
    "padd0",
    "padd1",
    "padd2",
    "psub",
    "psub0",
    "psub1",
    "psub2",
    "pmul",
    "pmul0",
    "pmul1",
    "pmul2",
    "pdiv",
    "pdiv0",
    "pdiv1",
    "pdiv2",
    "psqrt",
    "psqrt0",
    "pneg",
    "pabs",
    "pisinf",
    "pisnan",
    "plt",
    "ple",
    "pgt",
    "pge",
    "peq",
    "pne",
    "tmulp",
    "tdivp",
    "tsqrtp",
    "renormalize",
    "fast_renorm",
    "fast_add0",
    "fast_sub0",
    "fabs",
    "sqrt",
    "isinf",
    "isnan",
    "Accumulator",
    "TwofoldArray",
    "plain_sum",
    "plain_dot",
    "tsum",
    "tsum_twofold",
    "tdot",
    "tadd_slice",
    "tsub_slice",
    "tmul_slice",
    "tdiv_slice",
    "tsqrt_slice",
    "TwofoldError",
    "FloatEnvironmentError",
    "ShapeMismatchError",
    "SingularMatrixError",
    "ParseError",
    "ScenarioError",
]
