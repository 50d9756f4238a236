"""Case studies run over every number kind.

Each scenario is written once against `BaseKind`. A twofold run is repeated
with the dotted kind of the same width, and every value lane must equal its
dotted counterpart bitwise. Published results are attached as expectations:
binding ones decide pass/fail, the others are informational.
"""
import logging
import typing as tp
from fractions import Fraction

import attr

from twofold.arith import SqrtPropagation
from twofold.exceptions import ScenarioError
from twofold.kind import KIND_NAMES, BaseKind, get_kind
from twofold.lab.report import Expectation, Quantity, ScenarioReport
from twofold.lab.solver import lu_solve
from twofold.number import Shape, identical, value_of

logger = logging.getLogger(__name__)

SCENARIOS = ("summation", "quadratic", "rump", "jordan")
ORDERS = ("literal", "grouped")
VARIANTS = ("integer", "normalized", "truncated")
TICKS_PER_HOUR = 36_000
JORDAN_SIZE = 5

Built = tp.List[tp.Tuple[str, tp.Any, str]]
Goldens = tp.Dict[tp.Tuple[str, str, str], tp.Dict[str, tp.Tuple[Expectation, ...]]]


Validator = tp.Callable[[tp.Any, attr.Attribute, tp.Any], None]


def _one_of(choices: tp.Sequence[str]) -> Validator:
    def validator(instance: tp.Any, attribute: attr.Attribute, value: tp.Any) -> None:
        if value not in choices:
            raise ScenarioError(
                f"Expected {attribute.name} in {', '.join(choices)}, got {value!r}"
            )

    return validator


def parse_rational(text: str) -> Fraction:
    """Exact value of a decimal literal or a sum of them, like "1+1e-8".

    Raises:
        ScenarioError: if text is not such a literal.
    """
    compact = text.replace(" ", "")
    terms = []
    start = 0
    for i in range(1, len(compact)):
        if compact[i] in "+-" and compact[i - 1] not in "eE":
            terms.append(compact[start:i])
            start = i
    terms.append(compact[start:])
    try:
        return sum((Fraction(term) for term in terms), Fraction(0))
    except (ValueError, ZeroDivisionError):
        raise ScenarioError(
            f"Expected a decimal literal like '1+1e-8', got {text!r}"
        ) from None


def _non_negative_hours(
    instance: tp.Any, attribute: attr.Attribute, value: float
) -> None:
    if not value >= 0:
        raise ScenarioError(f"Expected hours >= 0, got {value!r}")


def _literal(instance: tp.Any, attribute: attr.Attribute, value: str) -> None:
    parse_rational(value)


def _positive_literal(instance: tp.Any, attribute: attr.Attribute, value: str) -> None:
    if parse_rational(value) <= 0:
        raise ScenarioError(f"Expected {attribute.name} > 0, got {value!r}")


def _propagation(value: tp.Any) -> SqrtPropagation:
    try:
        return SqrtPropagation(value)
    except ValueError:
        raise ScenarioError(
            f"Expected sqrt propagation exact or mirrored, got {value!r}"
        ) from None


@attr.s(frozen=True, slots=True)
class ScenarioConfig:
    """One scenario run.

    Args:
        scenario: summation, quadratic, rump or jordan.
        kind: number kind name, e.g. "twofold32".
        hours: summation horizon.
        c: quadratic constant term, a decimal literal such as "1e-8" or "1+1e-8",
            taken as the nearest binary64 and then converted to the kind.
        order: rump evaluation order, literal or grouped.
        lam: Jordan cell eigenvalue, a positive decimal literal.
        variant: Jordan system, integer (scaled by 1/lam), normalized, or
            truncated (normalized with every input error lane zeroed).
        sqrt_propagation: square-root error propagation of twofold kinds.

    Raises:
        ScenarioError: on an invalid parameter.
    """

    scenario: str = attr.ib(validator=_one_of(SCENARIOS))
    kind: str = attr.ib(validator=_one_of(KIND_NAMES))
    hours: float = attr.ib(default=100.0, kw_only=True, validator=_non_negative_hours)
    c: str = attr.ib(default="1e-8", kw_only=True, validator=_literal)
    order: str = attr.ib(default="literal", kw_only=True, validator=_one_of(ORDERS))
    lam: str = attr.ib(default="1e-4", kw_only=True, validator=_positive_literal)
    variant: str = attr.ib(
        default="normalized", kw_only=True, validator=_one_of(VARIANTS)
    )
    sqrt_propagation: SqrtPropagation = attr.ib(
        default=SqrtPropagation.MIRRORED, kw_only=True, converter=_propagation
    )

    @property
    def parameters(self) -> tp.Dict[str, str]:
        if self.scenario == "summation":
            return {"hours": format(self.hours, "g")}
        if self.scenario == "quadratic":
            return {"c": self.c}
        if self.scenario == "rump":
            return {"order": self.order}
        return {"lambda": self.lam, "variant": self.variant}

    def key(self) -> tp.Tuple[str, str, str]:
        params = ",".join(f"{k}={v}" for k, v in self.parameters.items())
        return self.scenario, self.kind, params

    def make_kind(self, name: tp.Optional[str] = None) -> BaseKind:
        return get_kind(name or self.kind, sqrt_propagation=self.sqrt_propagation)


def _expect(
    value: tp.Optional[float] = None,
    error: tp.Optional[float] = None,
    *,
    rel: float = 1e-5,
    binding: bool = False,
    mirrored: bool = False,
) -> Expectation:
    return Expectation(
        value=value,
        error=error,
        rel=rel,
        binding=binding,
        propagation=SqrtPropagation.MIRRORED if mirrored else None,
    )


def _unit_solution(kinds: tp.Iterable[str]) -> Goldens:
    exact = (_expect(1.0, 0.0, rel=0.0, binding=True),)
    return {
        ("jordan", kind, "lambda=1e-4,variant=integer"): {
            f"x{i}": exact for i in range(1, JORDAN_SIZE + 1)
        }
        for kind in kinds
    }


# published results, keyed by ScenarioConfig.key()
GOLDENS: Goldens = {
    ("summation", "twofold32", "hours=100"): {
        "1/10 s": (_expect(0.1, -1.49012e-09),),
        "result": (_expect(96.3958, 3.54008, rel=1e-4, binding=True),),
    },
    ("summation", "dotted64", "hours=100"): {
        "result": (_expect(100.0, rel=1e-8, binding=True),),
    },
    ("quadratic", "twofold32", "c=1e-8"): {
        "a": (_expect(1.0, 0.0),),
        "b": (_expect(2.0, 0.0),),
        "c": (_expect(1e-08, 6.07747e-17),),
        "d": (_expect(2.0, 1e-08, mirrored=True),),
        "x0": (_expect(-2.0, -5e-09, mirrored=True),),
        "x1": (_expect(0.0, 5e-09, rel=1e-4, binding=True, mirrored=True),),
    },
    ("quadratic", "twofold64", "c=1e-8"): {
        "a": (_expect(1.0, 0.0),),
        "b": (_expect(2.0, 0.0),),
        "c": (_expect(1e-08, 0.0),),
        "d": (_expect(1.99999999, 3.57747092909712e-17, rel=1e-6, mirrored=True),),
        "x0": (_expect(-1.999999995, -1.28909657108001e-16, rel=1e-6, mirrored=True),),
        "x1": (
            _expect(
                -5.00000008063495e-09,
                1.78873546454856e-17,
                rel=1e-6,
                binding=True,
                mirrored=True,
            ),
        ),
    },
    ("quadratic", "twofold32", "c=1+1e-8"): {
        "a": (_expect(1.0, 0.0),),
        "b": (_expect(2.0, 0.0),),
        "c": (_expect(1.0, 1e-08),),
        "d": (_expect(0.0, float("nan"), binding=True),),
        "x0": (_expect(-1.0, float("nan")),),
        "x1": (_expect(-1.0, float("nan")),),
    },
    ("quadratic", "twofold64", "c=1+1e-8"): {
        "a": (_expect(1.0, 0.0),),
        "b": (_expect(2.0, 0.0),),
        "c": (_expect(1.00000001, 0.0),),
        "d": (_expect(float("nan"), float("nan"), binding=True),),
        "x0": (_expect(float("nan"), float("nan")),),
        "x1": (_expect(float("nan"), float("nan")),),
    },
    ("rump", "dotted32", "order=literal"): {"f": (_expect(1.172603, rel=1e-6),)},
    ("rump", "dotted64", "order=literal"): {
        "f": (_expect(1.1726039400531, rel=1e-12),),
    },
    ("rump", "twofold32", "order=literal"): {
        "f": (
            _expect(error=-2.47524e-08, rel=1e-4, binding=True),
            _expect(1.1726, rel=1e-4),
        ),
    },
    ("rump", "twofold64", "order=literal"): {
        "f": (_expect(error=-2.0, rel=1e-6, binding=True), _expect(1.1726, rel=1e-4)),
    },
    ("rump", "twofold32", "order=grouped"): {
        "f": (_expect(-4.38709e12, 4.38709e12),),
    },
    ("rump", "twofold64", "order=grouped"): {
        "f": (_expect(2687.17, -2688.0, rel=1e-3, binding=True),),
    },
    ("jordan", "twofold64", "lambda=1e-4,variant=normalized"): {
        "x1": (_expect(1.11012, -0.110123, rel=1e-3, binding=True),),
        "x2": (_expect(0.999989, 1.10123e-05, rel=1e-3),),
        "x3": (_expect(1.0, -1.10123e-09, rel=1e-3),),
        "x4": (_expect(1.0, 1.10134e-13, rel=1e-3),),
        "x5": (_expect(1.0, 0.0, rel=1e-3),),
    },
    ("jordan", "twofold64", "lambda=1e-4,variant=truncated"): {
        "x1": (_expect(1.11012, 4.79169e-05, rel=1e-3, binding=True),),
        "x2": (_expect(0.999989, -4.79169e-09, rel=1e-3),),
        "x3": (_expect(1.0, 4.79169e-13, rel=1e-3),),
        "x4": (_expect(1.0, -4.79217e-17, rel=1e-3),),
        "x5": (_expect(1.0, 0.0, rel=1e-3),),
    },
    ("jordan", "twofold32", "lambda=1e-4,variant=normalized"): {
        "x1": (_expect(-1.65923e08, 1.65923e08, rel=1e-3, binding=True),),
        "x2": (_expect(16593.3, -16592.3, rel=1e-3),),
        "x3": (_expect(-0.659227, 1.65923, rel=1e-3),),
        "x4": (_expect(1.00017, -0.000165939, rel=1e-3),),
        "x5": (_expect(1.0, 0.0, rel=1e-3),),
    },
    ("jordan", "twofold32", "lambda=1e-4,variant=truncated"): {
        "x1": (_expect(-1.65923e08, -25280.1, rel=1e-3, binding=True),),
        "x2": (_expect(16593.3, 2.52766, rel=1e-3),),
        "x3": (_expect(-0.659227, -0.00025268, rel=1e-3),),
        "x4": (_expect(1.00017, 2.52663e-08, rel=1e-3),),
        "x5": (_expect(1.0, 0.0, rel=1e-3),),
    },
    **_unit_solution(KIND_NAMES),
}


def summation_quantities(cfg: ScenarioConfig, kind: BaseKind) -> Built:
    """A timer counting tenths of a second: `hours * 36000` additions of 0.1."""
    ticks = round(cfg.hours * TICKS_PER_HOUR)
    tick = kind.from_number(0.1)
    total = kind.running_sum(tick, ticks)
    hours = kind.div(total, kind.constant(3600))
    return [
        ("1/10 s", tick, ""),
        ("result", hours, "hours"),
        ("expect", kind.constant(cfg.hours), "hours"),
    ]


def quadratic_quantities(cfg: ScenarioConfig, kind: BaseKind) -> Built:
    """Roots of `a*x*x + b*x + c` by the school formula, a = 1 and b = 2."""
    a = kind.from_number(1)
    b = kind.from_number(2)
    c = kind.from_number(float(parse_rational(cfg.c)))
    discriminant = kind.sub(kind.mul(b, b), kind.mul(kind.mul(kind.constant(4), a), c))
    d = kind.sqrt(discriminant)
    two_a = kind.mul(kind.constant(2), a)
    x0 = kind.div(kind.sub(kind.neg(b), d), two_a)
    x1 = kind.div(kind.add(kind.neg(b), d), two_a)
    named = {"a": a, "b": b, "c": c, "d": d, "x0": x0, "x1": x1}
    return [(name, number, "") for name, number in named.items()]


def _product(kind: BaseKind, factor: int, *terms: tp.Any) -> tp.Any:
    result = kind.constant(factor)
    for term in terms:
        result = kind.mul(result, term)
    return result


def rump_quantities(cfg: ScenarioConfig, kind: BaseKind) -> Built:
    """`21b^2 - 2a^2 + 55b^4 - 10a^2b^2 + a/2b` at a = 77617, b = 33096."""
    a = kind.from_number(77617)
    b = kind.from_number(33096)
    t1 = _product(kind, 21, b, b)
    t2 = _product(kind, 2, a, a)
    t3 = _product(kind, 55, b, b, b, b)
    t4 = _product(kind, 10, a, a, b, b)
    t5 = kind.div(a, kind.mul(kind.constant(2), b))
    if cfg.order == "literal":
        f = kind.add(kind.sub(kind.add(kind.sub(t1, t2), t3), t4), t5)
    else:
        f = kind.add(kind.add(kind.sub(t1, t2), kind.sub(t3, t4)), t5)
    return [("f", f, "")]


def jordan_system(
    cfg: ScenarioConfig, kind: BaseKind
) -> tp.Tuple[tp.List[tp.List[tp.Any]], tp.List[tp.Any]]:
    """A 5x5 Jordan cell and the right-hand side whose exact solution is all ones.

    The entries are exact rationals converted once to the kind.
    """
    lam = parse_rational(cfg.lam)
    if cfg.variant == "integer":
        diagonal, upper = Fraction(1), 1 / lam
    else:
        diagonal, upper = lam, Fraction(1)
    n = JORDAN_SIZE
    exact_a = [
        [diagonal if j == i else upper if j == i + 1 else Fraction(0) for j in range(n)]
        for i in range(n)
    ]
    exact_f = [sum(row, Fraction(0)) for row in exact_a]
    a = [[kind.from_number(q) for q in row] for row in exact_a]
    f = [kind.from_number(q) for q in exact_f]
    if cfg.variant == "truncated":
        a = [[kind.truncate(x) for x in row] for row in a]
        f = [kind.truncate(x) for x in f]
    return a, f


def jordan_quantities(cfg: ScenarioConfig, kind: BaseKind) -> Built:
    a, f = jordan_system(cfg, kind)
    x = lu_solve(a, f, kind)
    return [(f"x{i}", xi, "") for i, xi in enumerate(x, start=1)]


BUILDERS: tp.Dict[str, tp.Callable[[ScenarioConfig, BaseKind], Built]] = {
    "summation": summation_quantities,
    "quadratic": quadratic_quantities,
    "rump": rump_quantities,
    "jordan": jordan_quantities,
}


def run_scenario(cfg: ScenarioConfig) -> ScenarioReport:
    """Run a scenario in its kind and judge every quantity.

    Twofold kinds are shadow-checked against the dotted kind of the same width.
    """
    logger.debug(f"Running {cfg}")
    kind = cfg.make_kind()
    build = BUILDERS[cfg.scenario]
    built = build(cfg, kind)
    shadows: tp.List[tp.Optional[bool]] = [None] * len(built)
    if kind.shape is Shape.TWOFOLD:
        dotted = build(cfg, cfg.make_kind(f"dotted{kind.width}"))
        shadows = [
            identical(value_of(number), value_of(plain))
            for (_, number, _), (_, plain, _) in zip(built, dotted)
        ]
    goldens = GOLDENS.get(cfg.key(), {})
    quantities = [
        Quantity(
            name,
            number,
            unit=unit,
            expectations=tuple(
                e for e in goldens.get(name, ()) if e.applies(cfg.sqrt_propagation)
            ),
            shadow=shadow,
        )
        for (name, number, unit), shadow in zip(built, shadows)
    ]
    report = ScenarioReport(cfg.scenario, cfg.kind, cfg.parameters, quantities)
    logger.debug(f"Finished {cfg.scenario} in {cfg.kind}, failed={report.failed}")
    return report


def _run_only(scenario: str, cfg: ScenarioConfig) -> ScenarioReport:
    if cfg.scenario != scenario:
        raise ScenarioError(
            f"Expected a {scenario} configuration, got {cfg.scenario!r}"
        )
    return run_scenario(cfg)


def run_summation(cfg: ScenarioConfig) -> ScenarioReport:
    return _run_only("summation", cfg)


def run_quadratic(cfg: ScenarioConfig) -> ScenarioReport:
    return _run_only("quadratic", cfg)


def run_rump(cfg: ScenarioConfig) -> ScenarioReport:
    return _run_only("rump", cfg)


def run_jordan(cfg: ScenarioConfig) -> ScenarioReport:
    return _run_only("jordan", cfg)
