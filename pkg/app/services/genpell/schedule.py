from decimal import Decimal, localcontext

from app.core.arith import require_nonsquare
from app.core.exceptions import InvalidInputError
from app.models.strategy import Schedule, ScheduleSegment


def estimate_regulator(d: int, q: int) -> Decimal:
    """sqrt(d) / (log10 d)^q, a lower estimate of the regulator."""
    with localcontext() as ctx:
        ctx.prec = 40
        value = Decimal(d)
        return value.sqrt() / value.log10() ** q


def regulator_schedule(
    d: int, q: int, exponent: int, regulator: Decimal | int | None = None
) -> Schedule:
    """
    floor(R / exponent) steps at 10^exponent, then an open-ended tail at 10^1.

    R is `regulator` when given (a known value or a lower bound), otherwise
    the estimate sqrt(d) / (log10 d)^q.
    """
    require_nonsquare(d)
    if q < 1:
        raise InvalidInputError(f"q must be >= 1, got {q}")
    if exponent < 1:
        raise InvalidInputError(f"exponent must be >= 1, got {exponent}")
    R = Decimal(regulator) if regulator is not None else estimate_regulator(d, q)
    steps = int(R // exponent)
    tail = ScheduleSegment(exponent=1)
    if steps < 1:
        return Schedule(segments=[tail])
    return Schedule(segments=[ScheduleSegment(steps=steps, exponent=exponent), tail])
