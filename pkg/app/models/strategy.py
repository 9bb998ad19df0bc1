from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ScheduleSegment(BaseModel):
    """`steps` iterations with LLL = 10^exponent; steps=None runs until termination."""

    model_config = ConfigDict(frozen=True)

    steps: int | None = Field(default=None, ge=1)
    exponent: int = Field(ge=1)

    @property
    def open_ended(self) -> bool:
        return self.steps is None

    def __str__(self) -> str:
        count = "*" if self.steps is None else str(self.steps)
        return f"{count}x{self.exponent}"


class Schedule(BaseModel):
    """Multi-speed LLL plan: ordered segments, only the last one may be open-ended."""

    model_config = ConfigDict(frozen=True)

    segments: list[ScheduleSegment] = Field(min_length=1)

    @model_validator(mode="after")
    def _only_tail_open(self) -> "Schedule":
        for segment in self.segments[:-1]:
            if segment.open_ended:
                raise ValueError("only the final segment may be open-ended")
        return self

    @classmethod
    def constant(cls, exponent: int) -> "Schedule":
        return cls(segments=[ScheduleSegment(exponent=exponent)])

    @property
    def max_exponent(self) -> int:
        return max(segment.exponent for segment in self.segments)

    def locate(self, iteration: int) -> tuple[int, int] | None:
        """
        (segment index, exponent) for the 0-based iteration, or None once a
        schedule without an open tail is used up.
        """
        remaining = iteration
        for index, segment in enumerate(self.segments):
            if segment.steps is None or remaining < segment.steps:
                return index, segment.exponent
            remaining -= segment.steps
        return None

    def __str__(self) -> str:
        return ",".join(str(segment) for segment in self.segments)


class FirstL(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["first-l"] = "first-l"
    L: int = Field(ge=1)


class SecondL(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["second-l"] = "second-l"
    L: int = Field(ge=1)


class SecondCfL(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["second-cf-l"] = "second-cf-l"
    L: int = Field(ge=1)


class SecondCfSteps(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["second-cf-s"] = "second-cf-s"
    s: int = Field(ge=1)


class SecondLLL(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["lll"] = "lll"
    schedule: Schedule


Strategy = Annotated[
    FirstL | SecondL | SecondCfL | SecondCfSteps | SecondLLL,
    Field(discriminator="kind"),
]


def describe(strategy: FirstL | SecondL | SecondCfL | SecondCfSteps | SecondLLL) -> str:
    match strategy:
        case FirstL(L=L) | SecondL(L=L) | SecondCfL(L=L):
            return f"{strategy.kind}(L={L})"
        case SecondCfSteps(s=s):
            return f"{strategy.kind}(s={s})"
        case SecondLLL(schedule=schedule):
            return f"lll({schedule})"
    raise TypeError(f"unknown strategy {strategy!r}")
