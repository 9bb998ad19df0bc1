"""
pell command line

Solves x^2 - d*y^2 = 1 with the continued fraction, the chakravala method and
its generalizations, runs benchmark sweeps and re-verifies saved traces.
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from typing import NoReturn

from app.cli import ExitCode, cmd_bench, cmd_solve, cmd_verify
from app.cli.bench import PRESETS
from app.cli.status import exit_code_for_error
from app.core.config import config
from app.core.exceptions import PellError
from app.core.logger import setup_root_logger
from app.models.pell import Algorithm
from app.models.run import OutputFormat

logger = logging.getLogger(__name__)


class PellArgumentParser(argparse.ArgumentParser):
    """Usage errors are invalid input, not argparse's generic status 2."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(ExitCode.INVALID_INPUT, f"{self.prog}: error: {message}\n")


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.TEXT.value,
    )


def _add_step_rule(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--L", type=int, help="bound on l for the first/second-L rules")
    parser.add_argument("--s", type=int, help="convergent index for second-cf-s")
    parser.add_argument("--schedule", help='LLL schedule, e.g. "27x75,*x5"')
    parser.add_argument("--max-steps", type=int, help="step cap (default PELL_MAX_STEPS)")


def build_parser() -> argparse.ArgumentParser:
    parser = PellArgumentParser(prog="pell", description=__doc__.strip().splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True, parser_class=PellArgumentParser)

    solve = commands.add_parser("solve", help="solve one instance")
    solve.add_argument("--d", type=int, required=True)
    solve.add_argument("--algo", choices=[a.value for a in Algorithm], required=True)
    _add_step_rule(solve)
    solve.add_argument(
        "--regulator-schedule",
        type=int,
        nargs=2,
        metavar=("Q", "EXP"),
        help="LLL schedule of sqrt(d)/(log10 d)^Q / EXP steps at 10^EXP, then *x1",
    )
    solve.add_argument("--no-track-big", action="store_true", help="keep only k, m, l, M per step")
    solve.add_argument("--trace", action="store_true", help="emit every step")
    solve.add_argument("--verify", action="store_true", help="check the trace identities")
    solve.add_argument("--minimality-bound", type=int)
    _add_format(solve)
    solve.set_defaults(handler=cmd_solve)

    bench = commands.add_parser("bench", help="run a preset table or a d-range sweep")
    source = bench.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=sorted(PRESETS))
    source.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"))
    bench.add_argument("--algos", default="cf,chakravala", help="comma-separated algorithms")
    _add_step_rule(bench)
    bench.add_argument("--workers", type=int, help="processes (default PELL_BENCH_WORKERS)")
    _add_format(bench)
    bench.set_defaults(handler=cmd_bench)

    verify = commands.add_parser("verify", help="re-verify a JSON trace")
    verify.add_argument("path")
    verify.add_argument("--bound", type=int, help="largest denominator for convergent checks")
    _add_format(verify)
    verify.set_defaults(handler=cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_root_logger(config.log_level, config.log_file)
    try:
        return int(args.handler(args))
    except PellError as e:
        code = exit_code_for_error(e)
        logger.error(f"{args.command} failed ({code.name}): {e}")
        return int(code)


if __name__ == "__main__":
    sys.exit(main())
