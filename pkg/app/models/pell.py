from enum import StrEnum
from typing import Annotated

from pydantic import BaseModel, BeforeValidator, ConfigDict, PlainSerializer

from .strategy import Strategy


def _parse_big_int(value: object) -> object:
    if isinstance(value, str):
        return int(value)
    return value


# Decimal strings in JSON: solutions outgrow every consumer's native numbers.
BigInt = Annotated[
    int,
    BeforeValidator(_parse_big_int),
    PlainSerializer(lambda v: str(v), return_type=str, when_used="json"),
]


class Algorithm(StrEnum):
    CF = "cf"
    CHAKRAVALA = "chakravala"
    FIRST_L = "first-l"
    SECOND_L = "second-l"
    SECOND_CF_L = "second-cf-l"
    SECOND_CF_S = "second-cf-s"
    LLL = "lll"


class Outcome(StrEnum):
    SOLVED = "solved"
    DIVERGED = "diverged"
    STEP_LIMIT = "step-limit"


class Minimality(StrEnum):
    FUNDAMENTAL = "fundamental"
    POWER = "power"
    UNVERIFIED = "unverified"


class PellTriple(BaseModel):
    """(a, b, k) with a^2 - d*b^2 = k."""

    model_config = ConfigDict(frozen=True)

    a: BigInt
    b: BigInt
    k: BigInt

    def holds_for(self, d: int) -> bool:
        return self.a * self.a - d * self.b * self.b == self.k


class PellSolution(BaseModel):
    """x + y*sqrt(d) with x^2 - d*y^2 = 1. `digits10` is floor(log10 x), the size of the regulator in decimal digits."""

    model_config = ConfigDict(frozen=True)

    x: BigInt
    y: BigInt
    steps: int
    digits10: int

    @classmethod
    def from_xy(cls, x: int, y: int, steps: int) -> "PellSolution":
        return cls(x=x, y=y, steps=steps, digits10=len(str(x)) - 1)


class StepRecord(BaseModel):
    """
    One triple of a trace.

    `m`, `l` are the multiplier pair that produced this triple from the
    previous one (divided by |k| of the previous record; the first record is
    produced from the identity triple (1, 0, 1)). `k` is a^2 - d*b^2 of this
    triple and `M` its residue -a/b mod |k|. `r` satisfies
    m = M_prev*l + r*|k_prev|.
    """

    model_config = ConfigDict(frozen=True)

    i: int
    k: BigInt
    m: BigInt
    l: BigInt  # noqa: E741
    M: BigInt | None = None
    r: BigInt | None = None
    a: BigInt | None = None
    b: BigInt | None = None
    segment: int | None = None

    @property
    def has_triple(self) -> bool:
        return self.a is not None and self.b is not None


class StepTrace(BaseModel):
    """Every step of a run, its outcome and the solution when one was reached."""

    d: BigInt
    algorithm: Algorithm
    params: Strategy | None = None
    outcome: Outcome
    solution: PellSolution | None = None
    minimality: Minimality = Minimality.UNVERIFIED
    power: int | None = None
    steps: list[StepRecord]

    @property
    def step_count(self) -> int:
        return len(self.steps)

    @property
    def iterations(self) -> int:
        return max(len(self.steps) - 1, 0)

    @property
    def tracks_big(self) -> bool:
        return all(record.has_triple for record in self.steps)

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True)

    @classmethod
    def from_json(cls, data: str | bytes) -> "StepTrace":
        return cls.model_validate_json(data)
