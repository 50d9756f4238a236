"""Throughput of the reductions and slices against their plain float loops.

Absolute numbers depend on the machine; the ratios are what to compare. Input
arrays are generated from a seed, so the computed values repeat exactly.
"""
import logging
import time
import typing as tp

import attr
import numpy as np

from twofold.eft import dtype_for
from twofold.exceptions import ScenarioError
from twofold.reductions import (
    TwofoldArray,
    plain_dot,
    plain_sum,
    tadd_slice,
    tdiv_slice,
    tdot,
    tmul_slice,
    tsqrt_slice,
    tsum,
)

logger = logging.getLogger(__name__)

KERNELS = ("sum", "dot", "tsum", "tdot", "ops")
SIZES = {"small": 1024, "large": 64 * 1024 * 1024}
GATE_SIZE = SIZES["large"]
GATE_RATIO = 0.1


def _size(value: tp.Union[int, str]) -> int:
    if isinstance(value, str):
        if value in SIZES:
            return SIZES[value]
        try:
            value = int(value)
        except ValueError:
            raise ScenarioError(
                f"Expected a size in bytes or one of {', '.join(SIZES)}, got {value!r}"
            ) from None
    if value < 1:
        raise ScenarioError(f"Expected a positive size, got {value}")
    return value


def _member(choices: tp.Collection[tp.Any]) -> tp.Callable[..., None]:
    def validator(instance: tp.Any, attribute: attr.Attribute, value: tp.Any) -> None:
        if value not in choices:
            raise ScenarioError(
                f"Expected {attribute.name} in {sorted(choices)}, got {value!r}"
            )

    return validator


def _at_least_one(instance: tp.Any, attribute: attr.Attribute, value: int) -> None:
    if value < 1:
        raise ScenarioError(f"Expected {attribute.name} >= 1, got {value}")


@attr.s(frozen=True, slots=True)
class BenchConfig:
    """One bench run.

    Args:
        kernel: sum, dot, tsum, tdot or ops.
        size: bytes per input array, or a preset name ("small", "large").
        width: 32 or 64.
        seed: seed of the input generator.
        repeat: timings taken, the best one is reported.
    """

    kernel: str = attr.ib(validator=_member(KERNELS))
    size: int = attr.ib(converter=_size)
    width: int = attr.ib(validator=_member((32, 64)))
    seed: int = attr.ib(default=0, kw_only=True)
    repeat: int = attr.ib(default=3, kw_only=True, validator=_at_least_one)

    @property
    def length(self) -> int:
        return max(1, self.size // np.dtype(dtype_for(self.width)).itemsize)


@attr.s(frozen=True, slots=True)
class BenchRecord:
    name: str = attr.ib()
    width: int = attr.ib()
    size: int = attr.ib()
    ops_per_sec: float = attr.ib()
    ratio: tp.Optional[float] = attr.ib()
    seed: int = attr.ib()


@attr.s(frozen=True, slots=True)
class BenchResult:
    """Records plus the computed outputs, keyed by record name."""

    records: tp.List[BenchRecord] = attr.ib()
    outputs: tp.Dict[str, tp.Any] = attr.ib()


def make_inputs(cfg: BenchConfig) -> tp.Tuple[np.ndarray, np.ndarray]:
    """Two arrays: normal samples, and positive divisors in [1, 2)."""
    rng = np.random.default_rng(cfg.seed)
    dtype = dtype_for(cfg.width)
    xs = rng.standard_normal(cfg.length).astype(dtype)
    ys = rng.uniform(1.0, 2.0, cfg.length).astype(dtype)
    return xs, ys


def _best_time(func: tp.Callable[[], tp.Any], repeat: int) -> tp.Tuple[float, tp.Any]:
    best = float("inf")
    output = None
    for _ in range(repeat):
        start = time.perf_counter()
        output = func()
        best = min(best, time.perf_counter() - start)
    return max(best, 1e-9), output


def _pairs(
    cfg: BenchConfig, xs: np.ndarray, ys: np.ndarray
) -> tp.List[tp.Tuple[str, tp.Callable[[], tp.Any], tp.Optional[str]]]:
    """(name, work, baseline name) in run order; baselines come first."""
    if cfg.kernel in ("sum", "tsum"):
        runs = [("sum", lambda: plain_sum(xs), None)]
        if cfg.kernel == "tsum":
            runs.append(("tsum", lambda: tsum(xs), "sum"))
        return runs
    if cfg.kernel in ("dot", "tdot"):
        runs = [("dot", lambda: plain_dot(xs, ys), None)]
        if cfg.kernel == "tdot":
            runs.append(("tdot", lambda: tdot(xs, ys), "dot"))
        return runs

    a = TwofoldArray.from_values(xs)
    b = TwofoldArray.from_values(ys)

    def plain(op: tp.Callable[..., np.ndarray], *args: np.ndarray) -> np.ndarray:
        with np.errstate(all="ignore"):
            return op(*args)

    return [
        ("add", lambda: plain(np.add, xs, ys), None),
        ("tadd_slice", lambda: tadd_slice(a, b), "add"),
        ("mul", lambda: plain(np.multiply, xs, ys), None),
        ("tmul_slice", lambda: tmul_slice(a, b), "mul"),
        ("div", lambda: plain(np.divide, xs, ys), None),
        ("tdiv_slice", lambda: tdiv_slice(a, b), "div"),
        ("sqrt", lambda: plain(np.sqrt, ys), None),
        ("tsqrt_slice", lambda: tsqrt_slice(b), "sqrt"),
    ]


def run_bench(cfg: BenchConfig) -> BenchResult:
    """Time the configured kernel and its plain baseline.

    Raises:
        MemoryError: if the input arrays cannot be allocated.
    """
    logger.debug(f"Benchmarking {cfg} over {cfg.length} elements")
    xs, ys = make_inputs(cfg)
    throughput: tp.Dict[str, float] = {}
    records: tp.List[BenchRecord] = []
    outputs: tp.Dict[str, tp.Any] = {}
    for name, work, baseline in _pairs(cfg, xs, ys):
        seconds, outputs[name] = _best_time(work, cfg.repeat)
        throughput[name] = cfg.length / seconds
        ratio = None if baseline is None else throughput[name] / throughput[baseline]
        records.append(
            BenchRecord(name, cfg.width, cfg.size, throughput[name], ratio, cfg.seed)
        )
    return BenchResult(records, outputs)


def check_gate(result: BenchResult) -> bool:
    """tsum on a large array must reach a tenth of the plain sum's throughput.

    Logs a warning and returns False when it does not; sizes other than the
    large preset and kernels other than tsum always pass.
    """
    for record in result.records:
        if record.name != "tsum" or record.size < GATE_SIZE or record.ratio is None:
            continue
        if record.ratio < GATE_RATIO:
            logger.warning(
                f"tsum reached {record.ratio:.3f} of plain sum throughput, "
                f"expected at least {GATE_RATIO}"
            )
            return False
    return True


def format_table(records: tp.Sequence[BenchRecord]) -> str:
    """Aligned text table, one row per record, ops/s in millions."""
    header = ("kernel", "width", "bytes", "MOPS", "ratio", "seed")
    rows = [
        (
            r.name,
            str(r.width),
            str(r.size),
            f"{r.ops_per_sec / 1e6:.1f}",
            "-" if r.ratio is None else f"{r.ratio:.3f}",
            str(r.seed),
        )
        for r in records
    ]
    widths = [max(len(row[i]) for row in [header, *rows]) for i in range(len(header))]
    lines = [
        "  ".join(
            cell.rjust(w) if i else cell.ljust(w)
            for i, (cell, w) in enumerate(zip(row, widths))
        )
        for row in [header, *rows]
    ]
    return "\n".join(lines) + "\n"


def bench_records(records: tp.Sequence[BenchRecord]) -> tp.List[tp.Dict[str, tp.Any]]:
    return [attr.asdict(record) for record in records]
