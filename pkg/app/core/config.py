from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

ROOT_DIR = Path(__file__).parent.parent.parent


class Config(BaseSettings):
    model_config = SettingsConfigDict(populate_by_name=True, extra="ignore")

    max_steps: int = Field(default=1000, ge=1, alias="PELL_MAX_STEPS")
    cf_max_steps: int = Field(default=1_000_000, ge=1, alias="PELL_CF_MAX_STEPS")
    minimality_check_bound: int = Field(
        default=10**10, ge=0, alias="PELL_MINIMALITY_BOUND"
    )
    convergent_check_bound: int = Field(
        default=10**6, ge=1, alias="PELL_CONVERGENT_BOUND"
    )
    sqrt_guard_digits: int = Field(default=16, ge=1, alias="PELL_SQRT_GUARD_DIGITS")
    precision_retries: int = Field(default=4, ge=1, alias="PELL_PRECISION_RETRIES")
    cross_check_m: bool = Field(default=True, alias="PELL_CROSS_CHECK_M")
    bench_workers: int = Field(default=1, ge=1, alias="PELL_BENCH_WORKERS")
    log_level: str = Field(default="INFO", alias="PELL_LOG_LEVEL")
    log_file: Path | None = Field(default=None, alias="PELL_LOG_FILE")


config = Config(_env_file=ROOT_DIR / ".env", _env_file_encoding="utf-8")
