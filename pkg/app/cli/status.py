from enum import IntEnum

from app.core.exceptions import (
    InvalidInputError,
    InvariantViolationError,
    PellError,
    PrecisionExhaustedError,
    StepLimitError,
)
from app.models.pell import Outcome
from app.models.report import VerifyReport


class ExitCode(IntEnum):
    SOLVED = 0
    NOT_SOLVED = 2
    INVALID_INPUT = 3
    INVARIANT_VIOLATION = 4


def exit_code_for_error(error: PellError) -> ExitCode:
    match error:
        case InvalidInputError():
            return ExitCode.INVALID_INPUT
        case StepLimitError():
            return ExitCode.NOT_SOLVED
        case InvariantViolationError() | PrecisionExhaustedError():
            return ExitCode.INVARIANT_VIOLATION
    return ExitCode.INVARIANT_VIOLATION


def exit_code_for_run(outcome: Outcome, report: VerifyReport | None = None) -> ExitCode:
    if report is not None and report.hard_failures:
        return ExitCode.INVARIANT_VIOLATION
    if outcome == Outcome.SOLVED:
        return ExitCode.SOLVED
    return ExitCode.NOT_SOLVED
