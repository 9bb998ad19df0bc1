"""
Benchmark sweeps: fixed presets that regenerate the published step-count
tables and the two-speed lattice experiments, and custom d ranges.
"""

import logging
import sys
from argparse import Namespace
from collections import defaultdict
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor, as_completed
from statistics import fmean
from typing import TextIO

from pydantic import BaseModel, ConfigDict, ValidationError
from tqdm import tqdm

from app.core.arith import is_square
from app.core.config import config
from app.core.exceptions import InvalidInputError, StepLimitError
from app.models.pell import Algorithm, Outcome, StepTrace
from app.models.run import BenchRow, OutputFormat, RunConfig
from app.models.strategy import Schedule, describe
from app.services import run_solver

from .output import write_rows, write_sequences
from .schedule import parse_schedule
from .status import ExitCode

logger = logging.getLogger(__name__)

TABLE2_D = (46, 61, 97, 109, 313, 541)
TABLE3_D = 132901
TABLE3_L = (9, 100, 1000, 1500, 1625, 1687, 1698, 1699, 1700, 2000)
TABLE3_CAP = 300
TABLE4_D = 1234567890
TABLE4_L = (9, 100, 200)
TABLE4_EXPONENTS = (6, 18, 20, 25)
TWO_SPEED_D = 130940879
TWO_SPEED_SCHEDULES = (
    "9x300,1x20",
    "27x100,*x5",
    "35x75,*x5",
    "27x75,*x10",
    "10x272,*x1",
    "52x52,*x1",
)
TWO_SPEED_CAP = 1000
TWO_SPEED_SHORT_CAP = 500


class BenchCase(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    run: RunConfig


def label_for(run: RunConfig) -> str:
    strategy = run.strategy
    return describe(strategy) if strategy is not None else str(run.algorithm)


def _case(d: int, algorithm: Algorithm, **params) -> BenchCase:
    run = RunConfig(d=d, algorithm=algorithm, **params)
    return BenchCase(label=label_for(run), run=run)


def _classic_and_L9(d: int) -> list[BenchCase]:
    return [
        _case(d, Algorithm.CF),
        _case(d, Algorithm.CHAKRAVALA),
        _case(d, Algorithm.FIRST_L, L=9),
        _case(d, Algorithm.SECOND_L, L=9),
    ]


def table1_cases() -> list[BenchCase]:
    return _classic_and_L9(61)


def table2_cases() -> list[BenchCase]:
    return [case for d in TABLE2_D for case in _classic_and_L9(d)]


def table3_cases() -> list[BenchCase]:
    return [
        _case(TABLE3_D, Algorithm.SECOND_L, L=L, max_steps=TABLE3_CAP) for L in TABLE3_L
    ]


def table4_cases() -> list[BenchCase]:
    cases = [_case(TABLE4_D, Algorithm.CF), _case(TABLE4_D, Algorithm.CHAKRAVALA)]
    cases += [_case(TABLE4_D, Algorithm.SECOND_L, L=L) for L in TABLE4_L]
    cases += [
        _case(TABLE4_D, Algorithm.LLL, schedule=Schedule.constant(e), track_big=False)
        for e in TABLE4_EXPONENTS
    ]
    return cases


def twospeed_cases() -> list[BenchCase]:
    cases = [_case(TWO_SPEED_D, Algorithm.CF)]
    for text in TWO_SPEED_SCHEDULES:
        cap = TWO_SPEED_SHORT_CAP if text == "27x75,*x10" else TWO_SPEED_CAP
        cases.append(
            _case(
                TWO_SPEED_D,
                Algorithm.LLL,
                schedule=parse_schedule(text),
                max_steps=cap,
                track_big=False,
            )
        )
    return cases


PRESETS: dict[str, Callable[[], list[BenchCase]]] = {
    "table1": table1_cases,
    "table2": table2_cases,
    "table3": table3_cases,
    "table4": table4_cases,
    "twospeed": twospeed_cases,
}


def range_cases(
    low: int,
    high: int,
    algorithms: Sequence[Algorithm],
    L: int | None = None,
    s: int | None = None,
    schedule: Schedule | None = None,
    max_steps: int | None = None,
) -> list[BenchCase]:
    """
    Every non-square d in [low, high] under each algorithm. The continued
    fraction is always included, as the baseline of the ratio summary.
    """
    if low < 2 or high < low:
        raise InvalidInputError(f"invalid range [{low}, {high}]")
    ordered = [Algorithm.CF, *(a for a in algorithms if a != Algorithm.CF)]
    cases = []
    for d in range(low, high + 1):
        if is_square(d):
            continue
        for algorithm in ordered:
            cases.append(
                _case(d, algorithm, L=L, s=s, schedule=schedule, max_steps=max_steps)
            )
    return cases


def run_case(case: BenchCase) -> tuple[BenchRow, StepTrace | None]:
    try:
        trace = run_solver(case.run)
    except StepLimitError:
        return BenchRow.step_limit(case.label, case.run), None
    return BenchRow.from_trace(case.label, trace), trace


def _row_only(case: BenchCase) -> BenchRow:
    return run_case(case)[0]


def run_cases(cases: Sequence[BenchCase], workers: int = 1) -> list[BenchRow]:
    """Run every case, in a process pool when workers > 1; rows keep the case order."""
    if workers <= 1:
        return [_row_only(case) for case in tqdm(cases, desc="Solving", unit="run")]

    rows: list[BenchRow | None] = [None] * len(cases)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = {executor.submit(_row_only, case): index for index, case in enumerate(cases)}
        with tqdm(total=len(futures), desc="Solving", unit="run") as pbar:
            for future in as_completed(futures):
                index = futures[future]
                try:
                    rows[index] = future.result()
                except Exception as e:
                    logger.error(f"Benchmark case {cases[index].label} failed: {e}")
                    raise
                finally:
                    pbar.update(1)
    return [row for row in rows if row is not None]


def run_sequences(cases: Sequence[BenchCase]) -> dict[str, StepTrace]:
    """Traces by label, for side-by-side listings of the triples."""
    traces: dict[str, StepTrace] = {}
    for case in cases:
        _, trace = run_case(case)
        if trace is not None:
            traces[case.label] = trace
    return traces


def ratio_summary(rows: Sequence[BenchRow]) -> dict[str, float]:
    """Mean of count(label) / count(cf) over the d where both runs solved."""
    baseline = {
        row.d: row.count
        for row in rows
        if row.algorithm == Algorithm.CF and row.outcome == Outcome.SOLVED
    }
    ratios: dict[str, list[float]] = defaultdict(list)
    for row in rows:
        if row.algorithm == Algorithm.CF or row.outcome != Outcome.SOLVED:
            continue
        base = baseline.get(row.d)
        if base and row.count is not None:
            ratios[row.label].append(row.count / base)
    return {label: fmean(values) for label, values in ratios.items()}


def cases_from_args(args: Namespace) -> list[BenchCase]:
    if args.preset:
        return PRESETS[args.preset]()
    if not args.range:
        raise InvalidInputError("bench needs --preset or --range LO HI")
    low, high = args.range
    try:
        algorithms = [Algorithm(name.strip()) for name in args.algos.split(",")]
    except ValueError as e:
        raise InvalidInputError(f"unknown algorithm in --algos {args.algos!r}") from e
    schedule = parse_schedule(args.schedule) if args.schedule else None
    try:
        return range_cases(
            low,
            high,
            algorithms,
            L=args.L,
            s=args.s,
            schedule=schedule,
            max_steps=args.max_steps,
        )
    except ValidationError as e:
        raise InvalidInputError(f"invalid bench options: {e}") from e


def cmd_bench(args: Namespace, stream: TextIO | None = None) -> ExitCode:
    """Diverged and capped cells are table values, so a finished sweep exits 0."""
    stream = stream or sys.stdout
    fmt = OutputFormat(args.format)
    cases = cases_from_args(args)
    logger.info(f"Running {len(cases)} benchmark cases")
    if args.preset == "table1":
        write_sequences(run_sequences(cases), fmt, stream)
        return ExitCode.SOLVED
    workers = args.workers or config.bench_workers
    rows = run_cases(cases, workers)
    ratios = ratio_summary(rows) if args.range else None
    write_rows(rows, fmt, stream, ratios)
    return ExitCode.SOLVED
