from enum import StrEnum

from pydantic import BaseModel, Field

from .pell import Algorithm, BigInt, Minimality


class CheckStatus(StrEnum):
    PASSED = "passed"
    FAILED = "failed"
    NOT_APPLICABLE = "not-applicable"


class Severity(StrEnum):
    HARD = "hard"  # proven identity: a failure is a solver bug
    CLAIM = "claim"  # observed empirically: reported, never fatal
    INFO = "info"


class CheckResult(BaseModel):
    name: str
    severity: Severity
    status: CheckStatus
    checked: int = 0
    failed_steps: list[int] = Field(default_factory=list)
    skipped: int = 0
    detail: str | None = None

    @classmethod
    def from_failures(
        cls,
        name: str,
        severity: Severity,
        checked: int,
        failed_steps: list[int],
        skipped: int = 0,
        detail: str | None = None,
    ) -> "CheckResult":
        if checked == 0:
            status = CheckStatus.NOT_APPLICABLE
        elif failed_steps:
            status = CheckStatus.FAILED
        else:
            status = CheckStatus.PASSED
        return cls(
            name=name,
            severity=severity,
            status=status,
            checked=checked,
            failed_steps=failed_steps,
            skipped=skipped,
            detail=detail,
        )

    @classmethod
    def not_applicable(
        cls, name: str, severity: Severity, detail: str | None = None
    ) -> "CheckResult":
        return cls(
            name=name,
            severity=severity,
            status=CheckStatus.NOT_APPLICABLE,
            detail=detail,
        )


class VerifyReport(BaseModel):
    d: BigInt
    algorithm: Algorithm
    checks: list[CheckResult]
    convergent_flags: list[bool | None] = Field(default_factory=list)
    minimality: Minimality = Minimality.UNVERIFIED

    def check(self, name: str) -> CheckResult:
        for result in self.checks:
            if result.name == name:
                return result
        raise KeyError(name)

    @property
    def hard_failures(self) -> list[CheckResult]:
        return [
            c
            for c in self.checks
            if c.severity == Severity.HARD and c.status == CheckStatus.FAILED
        ]

    @property
    def claim_failures(self) -> list[CheckResult]:
        return [
            c
            for c in self.checks
            if c.severity == Severity.CLAIM and c.status == CheckStatus.FAILED
        ]

    @property
    def ok(self) -> bool:
        return not self.hard_failures
