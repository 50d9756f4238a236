import json
import math
import typing as tp
from abc import ABC, abstractmethod

import attr
import msgpack

from twofold.arith import SqrtPropagation
from twofold.formatting import (
    DEFAULT_OPTIONS,
    FormatOptions,
    format_twofold,
    lane_fields,
    parse_twofold,
)
from twofold.number import Twofold, error_of, value_of

PASS = "pass"
FAIL = "fail"
MATCH = "match"
DIFFER = "differ"


def lane_matches(actual: float, expected: float, rel: float) -> bool:
    """NaN matches NaN, zeros and infinities match exactly, the rest within rel."""
    if math.isnan(expected):
        return math.isnan(actual)
    if expected == 0 or math.isinf(expected):
        return actual == expected
    return abs(actual - expected) <= rel * abs(expected)


@attr.s(frozen=True, slots=True)
class Expectation:
    """A published result for one quantity.

    Args:
        value: expected value lane, None to leave it unchecked.
        error: expected error lane, None to leave it unchecked.
        rel: relative tolerance per lane.
        binding: a binding expectation decides the exit status (pass/fail);
            others are informational (match/differ).
        propagation: only check under this square-root propagation mode.
    """

    value: tp.Optional[float] = attr.ib(default=None, kw_only=True)
    error: tp.Optional[float] = attr.ib(default=None, kw_only=True)
    rel: float = attr.ib(default=1e-5, kw_only=True)
    binding: bool = attr.ib(default=False, kw_only=True)
    propagation: tp.Optional[SqrtPropagation] = attr.ib(default=None, kw_only=True)

    def applies(self, propagation: SqrtPropagation) -> bool:
        return self.propagation is None or self.propagation is propagation

    def check(self, number: tp.Any) -> bool:
        checks = [
            lane_matches(float(lane(number)), expected, self.rel)
            for lane, expected in ((value_of, self.value), (error_of, self.error))
            if expected is not None
        ]
        return all(checks)

    def describe(self) -> str:
        value = "_" if self.value is None else format(self.value, ".15g")
        error = "_" if self.error is None else format(self.error, ".15g")
        return f"{value}[{error}]"


@attr.s(frozen=True, slots=True)
class Quantity:
    """One reported number of a scenario and how it was judged.

    `shadow` is None unless the scenario ran a twofold kind, then it tells whether
    the value lane equals the dotted run of the same width bitwise.
    """

    name: str = attr.ib()
    number: tp.Any = attr.ib()
    unit: str = attr.ib(default="", kw_only=True)
    expectations: tp.Tuple[Expectation, ...] = attr.ib(default=(), kw_only=True)
    shadow: tp.Optional[bool] = attr.ib(default=None, kw_only=True)

    @property
    def expected(self) -> tp.Optional[str]:
        if not self.expectations:
            return None
        return "; ".join(expectation.describe() for expectation in self.expectations)

    @property
    def verdict(self) -> tp.Optional[str]:
        if self.shadow is False:
            return FAIL
        binding = [e.check(self.number) for e in self.expectations if e.binding]
        if binding:
            return PASS if all(binding) else FAIL
        informational = [e.check(self.number) for e in self.expectations]
        if informational:
            return MATCH if all(informational) else DIFFER
        if self.shadow:
            return PASS
        return None


@attr.s(frozen=True, slots=True)
class ScenarioReport:
    scenario: str = attr.ib()
    kind: str = attr.ib()
    parameters: tp.Dict[str, str] = attr.ib(factory=dict)
    quantities: tp.List[Quantity] = attr.ib(factory=list)

    @property
    def failed(self) -> bool:
        return any(quantity.verdict == FAIL for quantity in self.quantities)

    def __len__(self) -> int:
        return len(self.quantities)


class BaseEmitter(ABC):
    """Renders scenario reports; `write` streams them as bytes."""

    def __init__(self, options: tp.Optional[FormatOptions] = None) -> None:
        self.options = options or DEFAULT_OPTIONS

    @abstractmethod
    def dumps(self, report: ScenarioReport) -> tp.Union[str, bytes]:
        """Abstract method rendering one report; an empty report renders empty."""

    def write(self, reports: tp.Iterable[ScenarioReport], stream: tp.BinaryIO) -> None:
        for report in reports:
            chunk = self.dumps(report)
            stream.write(chunk.encode() if isinstance(chunk, str) else chunk)
        stream.flush()


class TextEmitter(BaseEmitter):
    """Log-style text: a `test:` header, then `name: value[error]` lines."""

    def dumps(self, report: ScenarioReport) -> str:
        if not report.quantities:
            return ""
        header = ", ".join(
            [f"kind={report.kind}"] + [f"{k}={v}" for k, v in report.parameters.items()]
        )
        lines = [f"test: {report.scenario}, {header}"]
        for quantity in report.quantities:
            line = f"  {quantity.name}: {format_twofold(quantity.number, self.options)}"
            if quantity.unit:
                line += f" {quantity.unit}"
            verdict = quantity.verdict
            if verdict is not None:
                expected = f" expected {quantity.expected}" if quantity.expected else ""
                line += f"  # {verdict}{expected}"
            lines.append(line)
        return "\n".join(lines) + "\n\n"


def report_records(report: ScenarioReport) -> tp.List[tp.Dict[str, tp.Any]]:
    """One flat record per quantity, lanes in both hex and decimal."""
    return [
        {
            "scenario": report.scenario,
            "kind": report.kind,
            "name": quantity.name,
            **lane_fields(quantity.number),
            "expected": quantity.expected,
            "verdict": quantity.verdict,
        }
        for quantity in report.quantities
    ]


class JsonLinesEmitter(BaseEmitter):
    def dumps(self, report: ScenarioReport) -> str:
        return "".join(json.dumps(record) + "\n" for record in report_records(report))


class MsgPackEmitter(BaseEmitter):
    def dumps(self, report: ScenarioReport) -> bytes:
        return b"".join(
            msgpack.packb(record, use_bin_type=True)
            for record in report_records(report)
        )


EMITTERS: tp.Dict[str, tp.Type[BaseEmitter]] = {
    "text": TextEmitter,
    "records": JsonLinesEmitter,
    "msgpack": MsgPackEmitter,
}


def load_records(
    data: tp.Union[str, bytes], fmt: str = "records"
) -> tp.List[tp.Dict[str, tp.Any]]:
    """Read back a `records` (JSON lines) or `msgpack` stream."""
    if fmt == "msgpack":
        if isinstance(data, str):
            raise TypeError(f"Expected bytes, got {type(data)}")
        unpacker = msgpack.Unpacker(raw=False)
        unpacker.feed(data)
        return list(unpacker)
    if isinstance(data, bytes):
        data = data.decode()
    return [json.loads(line) for line in data.splitlines() if line.strip()]


def record_number(record: tp.Dict[str, tp.Any]) -> Twofold:
    """The twofold a record describes, bitwise, from its hex fields."""
    width = int(record["kind"][-2:])
    return parse_twofold(f"{record['value_hex']}[{record['error_hex']}]", width)
