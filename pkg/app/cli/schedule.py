import re

from app.core.exceptions import ScheduleParseError
from app.models.strategy import Schedule, ScheduleSegment

_SEGMENT = re.compile(r"(\*|\d+)x(\d+)")


def parse_schedule(text: str) -> Schedule:
    """
    Parse "COUNTxEXP,COUNTxEXP,...,*xEXP" into a Schedule.

    "27x75,*x5" means 27 iterations with LLL = 10^75, then 10^5 until the run
    ends. COUNT and EXP are integers >= 1 and only the last COUNT may be "*".

    Raises:
        ScheduleParseError: With the 0-based position of the offending segment.
    """
    if not text.strip():
        raise ScheduleParseError("empty schedule", 0)
    parts = text.split(",")
    segments: list[ScheduleSegment] = []
    position = 0
    for index, part in enumerate(parts):
        offset = len(part) - len(part.lstrip())
        match = _SEGMENT.fullmatch(part.strip())
        if match is None:
            raise ScheduleParseError(
                f"expected COUNTxEXP, got {part.strip()!r}", position + offset
            )
        count, exponent = match.groups()
        if count == "*":
            if index != len(parts) - 1:
                raise ScheduleParseError(
                    "only the last segment may be open-ended", position + offset
                )
            steps = None
        else:
            steps = int(count)
            if steps < 1:
                raise ScheduleParseError("segment count must be >= 1", position + offset)
        if int(exponent) < 1:
            raise ScheduleParseError(
                "exponent must be >= 1", position + offset + match.start(2)
            )
        segments.append(ScheduleSegment(steps=steps, exponent=int(exponent)))
        position += len(part) + 1
    return Schedule(segments=segments)
