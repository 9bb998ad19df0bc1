import logging
import sys
from argparse import Namespace
from pathlib import Path
from typing import TextIO

from pydantic import ValidationError

from app.core.exceptions import InvalidInputError
from app.models.pell import StepTrace
from app.models.run import OutputFormat, RunConfig, SolveSummary
from app.models.strategy import Schedule
from app.services import run_and_verify
from app.services.genpell import regulator_schedule
from app.services.verify import verify_trace

from .output import write_report, write_summary, write_trace
from .schedule import parse_schedule
from .status import ExitCode, exit_code_for_run

logger = logging.getLogger(__name__)


def _schedule_from_args(args: Namespace) -> Schedule | None:
    if args.schedule and args.regulator_schedule:
        raise InvalidInputError("--schedule and --regulator-schedule are exclusive")
    if args.regulator_schedule:
        q, exponent = args.regulator_schedule
        return regulator_schedule(args.d, q, exponent)
    return parse_schedule(args.schedule) if args.schedule else None


def run_config_from_args(args: Namespace) -> RunConfig:
    """
    Raises:
        InvalidInputError: If the flags do not form a valid run.
        ScheduleParseError: If --schedule is malformed.
    """
    params = {
        "d": args.d,
        "algorithm": args.algo,
        "L": args.L,
        "s": args.s,
        "schedule": _schedule_from_args(args),
        "max_steps": args.max_steps,
        "track_big": not args.no_track_big,
        "output_format": args.format,
        "trace": args.trace,
        "verify": args.verify,
    }
    if args.minimality_bound is not None:
        params["minimality_bound"] = args.minimality_bound
    try:
        return RunConfig(**params)
    except ValidationError as e:
        raise InvalidInputError(f"invalid solve options: {e}") from e


def cmd_solve(args: Namespace, stream: TextIO | None = None) -> ExitCode:
    stream = stream or sys.stdout
    run = run_config_from_args(args)
    trace, report = run_and_verify(run)
    if run.trace:
        write_trace(trace, run.output_format, stream)
    else:
        write_summary(SolveSummary.from_trace(trace), run.output_format, stream)
    if report is not None:
        write_report(report, run.output_format, stream)
    code = exit_code_for_run(trace.outcome, report)
    logger.info(f"solve d={run.d} algorithm={run.algorithm} exited with {code.name}")
    return code


def cmd_verify(args: Namespace, stream: TextIO | None = None) -> ExitCode:
    """Re-check a JSON trace written by `solve --trace --format json`."""
    stream = stream or sys.stdout
    path = Path(args.path)
    try:
        trace = StepTrace.from_json(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise InvalidInputError(f"cannot read trace {path}: {e}") from e
    except ValidationError as e:
        raise InvalidInputError(f"{path} is not a valid trace: {e}") from e
    report = verify_trace(trace, args.bound)
    write_report(report, OutputFormat(args.format), stream)
    if report.hard_failures:
        return ExitCode.INVARIANT_VIOLATION
    return ExitCode.SOLVED
