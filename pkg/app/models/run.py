from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.config import config

from .pell import Algorithm, BigInt, Minimality, Outcome, StepTrace
from .strategy import (
    FirstL,
    Schedule,
    SecondCfL,
    SecondCfSteps,
    SecondL,
    SecondLLL,
    Strategy,
    describe,
)


class OutputFormat(StrEnum):
    JSON = "json"
    CSV = "csv"
    TEXT = "text"


_NEEDS_L = (Algorithm.FIRST_L, Algorithm.SECOND_L, Algorithm.SECOND_CF_L)


class RunConfig(BaseModel):
    """One solver invocation, as assembled by the command line."""

    model_config = ConfigDict(frozen=True)

    d: BigInt
    algorithm: Algorithm
    L: int | None = Field(default=None, ge=1)
    s: int | None = Field(default=None, ge=1)
    schedule: Schedule | None = None
    max_steps: int | None = Field(default=None, ge=1)
    track_big: bool = True
    output_format: OutputFormat = OutputFormat.TEXT
    trace: bool = False
    verify: bool = False
    minimality_bound: int = Field(
        default_factory=lambda: config.minimality_check_bound, ge=0
    )

    @model_validator(mode="after")
    def _parameters_match_algorithm(self) -> "RunConfig":
        if self.algorithm in _NEEDS_L and self.L is None:
            raise ValueError(f"algorithm {self.algorithm} needs L")
        if self.algorithm == Algorithm.SECOND_CF_S and self.s is None:
            raise ValueError(f"algorithm {self.algorithm} needs s")
        if self.algorithm == Algorithm.LLL and self.schedule is None:
            raise ValueError(f"algorithm {self.algorithm} needs a schedule")
        return self

    @property
    def step_cap(self) -> int:
        """Explicit cap, else the configured one for the algorithm family."""
        if self.max_steps is not None:
            return self.max_steps
        if self.algorithm in (Algorithm.CF, Algorithm.CHAKRAVALA):
            return config.cf_max_steps
        return config.max_steps

    @property
    def strategy(self) -> Strategy | None:
        """Step rule of a generalized algorithm, None for cf and chakravala."""
        match self.algorithm:
            case Algorithm.FIRST_L:
                return FirstL(L=self.L)
            case Algorithm.SECOND_L:
                return SecondL(L=self.L)
            case Algorithm.SECOND_CF_L:
                return SecondCfL(L=self.L)
            case Algorithm.SECOND_CF_S:
                return SecondCfSteps(s=self.s)
            case Algorithm.LLL:
                return SecondLLL(schedule=self.schedule)
        return None


class SolutionFlag(StrEnum):
    FUNDAMENTAL = "fundamental"
    POWER = "power"
    POSSIBLY_POWER = "possibly-power"
    DIVERGED = "diverged"
    STEP_LIMIT = "step-limit"


def _flag(outcome: Outcome, minimality: Minimality) -> SolutionFlag:
    if outcome == Outcome.DIVERGED:
        return SolutionFlag.DIVERGED
    if outcome == Outcome.STEP_LIMIT:
        return SolutionFlag.STEP_LIMIT
    return {
        Minimality.FUNDAMENTAL: SolutionFlag.FUNDAMENTAL,
        Minimality.POWER: SolutionFlag.POWER,
        Minimality.UNVERIFIED: SolutionFlag.POSSIBLY_POWER,
    }[minimality]


class SolveSummary(BaseModel):
    """What `solve` prints without --trace."""

    d: BigInt
    algorithm: Algorithm
    params: str | None = None
    outcome: Outcome
    flag: SolutionFlag
    steps: int
    iterations: int
    digits10: int | None = None
    power: int | None = None
    x: BigInt | None = None
    y: BigInt | None = None

    @property
    def count(self) -> int:
        """Lattice runs are counted in iterations, every other algorithm in triples."""
        if self.algorithm == Algorithm.LLL:
            return self.iterations
        return self.steps

    @classmethod
    def from_trace(cls, trace: StepTrace) -> "SolveSummary":
        solution = trace.solution
        return cls(
            d=trace.d,
            algorithm=trace.algorithm,
            params=describe(trace.params) if trace.params is not None else None,
            outcome=trace.outcome,
            flag=_flag(trace.outcome, trace.minimality),
            steps=trace.step_count,
            iterations=trace.iterations,
            digits10=solution.digits10 if solution else None,
            power=trace.power,
            x=solution.x if solution else None,
            y=solution.y if solution else None,
        )


class BenchRow(BaseModel):
    """One cell of a benchmark table."""

    label: str
    d: BigInt
    algorithm: Algorithm
    params: str | None = None
    outcome: Outcome
    flag: SolutionFlag
    steps: int | None = None
    iterations: int | None = None
    digits10: int | None = None

    @property
    def count(self) -> int | None:
        """Schedules count lattice iterations; every other algorithm counts triples."""
        if self.algorithm == Algorithm.LLL:
            return self.iterations
        return self.steps

    @classmethod
    def from_trace(cls, label: str, trace: StepTrace) -> "BenchRow":
        summary = SolveSummary.from_trace(trace)
        return cls(label=label, **summary.model_dump(exclude={"x", "y", "power"}))

    @classmethod
    def step_limit(cls, label: str, run: RunConfig) -> "BenchRow":
        strategy = run.strategy
        return cls(
            label=label,
            d=run.d,
            algorithm=run.algorithm,
            params=describe(strategy) if strategy is not None else None,
            outcome=Outcome.STEP_LIMIT,
            flag=SolutionFlag.STEP_LIMIT,
        )
