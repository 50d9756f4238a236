"""`lab` command line: case studies and bench runs.

Exit status: 0 when every verdict passes, 1 when a binding verdict fails, 2 on
a usage or configuration error, 3 when output or allocation fails.
"""
import argparse
import json
import logging
import sys
import typing as tp

import msgpack

from twofold.bench import (
    KERNELS,
    SIZES,
    BenchConfig,
    bench_records,
    check_gate,
    format_table,
    run_bench,
)
from twofold.exceptions import TwofoldError
from twofold.formatting import FormatOptions
from twofold.kind import KIND_NAMES
from twofold.lab.report import EMITTERS, ScenarioReport
from twofold.lab.scenarios import ORDERS, VARIANTS, ScenarioConfig, run_scenario

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3
DEFAULT_KINDS = ("twofold32", "twofold64")


def _output_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=sorted(EMITTERS),
        default="text",
        dest="fmt",
        help="text log, JSON-lines records or msgpack records",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)


def _scenario_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--kind",
        action="append",
        choices=(*KIND_NAMES, "all"),
        help="number kind, repeatable; 'all' runs all six "
        f"(default: {' '.join(DEFAULT_KINDS)})",
    )
    parser.add_argument("--digits", type=int, default=6)
    parser.add_argument("--bit-exact", action="store_true", help="hex float lanes")
    parser.add_argument(
        "--sqrt-propagation", choices=("exact", "mirrored"), default="mirrored"
    )
    _output_options(parser)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lab", description="Twofold arithmetic case studies and benchmarks"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    corner = commands.add_parser("corner", help="summation, quadratic or rump")
    corner.add_argument("scenario", choices=("summation", "quadratic", "rump"))
    corner.add_argument("--hours", type=float, default=100.0)
    corner.add_argument("--c", default="1e-8", help="e.g. 1e-8, 1+1e-8, 1-1e-8")
    corner.add_argument("--order", choices=ORDERS, default="literal")
    _scenario_options(corner)

    solve = commands.add_parser("solve", help="Jordan cell LU solve")
    solve.add_argument("scenario", choices=("jordan",))
    solve.add_argument("--lambda", dest="lam", default="1e-4")
    solve.add_argument("--variant", choices=VARIANTS, default="normalized")
    _scenario_options(solve)

    bench = commands.add_parser("bench", help="throughput against plain floats")
    bench.add_argument("--kernel", choices=KERNELS, default="tsum")
    bench.add_argument(
        "--size", default="small", help=f"bytes, or one of {', '.join(SIZES)}"
    )
    bench.add_argument("--width", type=int, choices=(32, 64), default=64)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--repeat", type=int, default=3)
    _output_options(bench)
    return parser


def _kinds(selected: tp.Optional[tp.List[str]]) -> tp.List[str]:
    if not selected:
        return list(DEFAULT_KINDS)
    if "all" in selected:
        return list(KIND_NAMES)
    return list(dict.fromkeys(selected))


def scenario_configs(args: argparse.Namespace) -> tp.List[ScenarioConfig]:
    """One config per selected kind.

    Raises:
        ScenarioError: on an invalid parameter.
    """
    options: tp.Dict[str, tp.Any] = {"sqrt_propagation": args.sqrt_propagation}
    if args.command == "corner":
        options.update(hours=args.hours, c=args.c, order=args.order)
    else:
        options.update(lam=args.lam, variant=args.variant)
    kinds = _kinds(args.kind)
    return [ScenarioConfig(args.scenario, kind, **options) for kind in kinds]


def _run_scenarios(args: argparse.Namespace, stream: tp.BinaryIO) -> int:
    try:
        configs = scenario_configs(args)
        options = FormatOptions(digits=args.digits, bit_exact=args.bit_exact)
    except (TwofoldError, ValueError) as error:
        logger.error(error)
        return EXIT_USAGE

    reports: tp.List[ScenarioReport] = []
    for cfg in configs:
        try:
            reports.append(run_scenario(cfg))
        except TwofoldError as error:
            logger.error(f"{cfg.scenario} in {cfg.kind}: {error}")
            return EXIT_FAILED

    EMITTERS[args.fmt](options).write(reports, stream)
    failed = [f"{r.scenario}/{r.kind}" for r in reports if r.failed]
    if failed:
        logger.error(f"Failed verdicts in {', '.join(failed)}")
        return EXIT_FAILED
    return EXIT_OK


def _run_bench(args: argparse.Namespace, stream: tp.BinaryIO) -> int:
    try:
        cfg = BenchConfig(
            args.kernel, args.size, args.width, seed=args.seed, repeat=args.repeat
        )
    except TwofoldError as error:
        logger.error(error)
        return EXIT_USAGE

    result = run_bench(cfg)
    check_gate(result)
    records = bench_records(result.records)
    if args.fmt == "text":
        stream.write(format_table(result.records).encode())
    elif args.fmt == "records":
        stream.write("".join(json.dumps(r) + "\n" for r in records).encode())
    else:
        stream.write(b"".join(msgpack.packb(r, use_bin_type=True) for r in records))
    stream.flush()
    return EXIT_OK


def main(argv: tp.Optional[tp.Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return EXIT_USAGE if exit_.code else EXIT_OK

    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    stream = sys.stdout.buffer
    try:
        if args.command == "bench":
            return _run_bench(args, stream)
        return _run_scenarios(args, stream)
    except MemoryError:
        logger.error("Out of memory")
        return EXIT_IO
    except OSError as error:
        logger.error(f"Cannot write output: {error}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
