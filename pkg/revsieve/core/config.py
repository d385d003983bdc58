from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..utils.validators import Validator

DEFAULT_SEED = 20240917
DEFAULT_MEM_CAP_BYTES = 256 * 2**20

class Strategy(str, Enum):

    BITSET = "bitset"
    BLOCKED = "blocked"
    BOTH = "both"

class OutputFormat(str, Enum):

    CSV = "csv"
    JSON = "json"

class Settings(BaseSettings):

    model_config = SettingsConfigDict(env_prefix="REVSIEVE_", extra="ignore")

    mem_cap_bytes: int = Field(default=DEFAULT_MEM_CAP_BYTES, ge=1)
    log_level: str = "WARNING"

def get_settings() -> Settings:
    # Re-read on every call so the environment can change between runs
    return Settings()

class SieveConfig(BaseModel):

    model_config = ConfigDict(frozen=True)

    segment_bytes: int = Field(default=2**20, ge=2**12)
    threads: int = Field(default=1, ge=1)
    strategy: Strategy = Strategy.BITSET

    # Low digits fixed per residue class in the blocked pass; None sizes blocks to segment_bytes
    residue_digits: int | None = Field(default=None, ge=1)

    strict_ndigit_reverse: bool = False
    allow_large: bool = False

    @field_validator("segment_bytes")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if not Validator.is_power_of_two(value):
            raise ValueError(f"segment_bytes must be a power of two, got {value}")
        return value

    @property
    def segment_span(self) -> int:
        # Odd integers covered by one packed segment
        return self.segment_bytes * 8

class RunConfig(BaseModel):

    subcommand: Literal[
        "theta",
        "palindromes",
        "theta-z",
        "almost-primes",
        "squarefree",
        "expsum",
        "arith",
        "heuristic",
    ]
    base: Literal[2, 10] = 2
    n_values: list[int] = Field(default_factory=list)
    seed: int = Field(default=DEFAULT_SEED, ge=0, lt=2**64)
    output: OutputFormat = OutputFormat.CSV
    out_path: Path | None = None
    verify: bool = False
    timing: bool = False
    sieve: SieveConfig = Field(default_factory=SieveConfig)

    # Subcommand parameters
    action: str | None = None
    samples: int = Field(default=10_000, ge=1)
    gamma: str | None = None
    k: int = Field(default=8, ge=1)
    d_max: int = Field(default=50, ge=1)
    n_max: int = Field(default=50, ge=2, le=60)

    @field_validator("n_values")
    @classmethod
    def _positive_sorted(cls, values: list[int]) -> list[int]:
        if any(n < 1 for n in values):
            raise ValueError(f"digit counts must be >= 1, got {values}")
        return sorted(set(values))

    @model_validator(mode="after")
    def _base_only_for_counts(self) -> RunConfig:
        if self.base == 10 and self.subcommand not in {"theta", "palindromes"}:
            raise ValueError(f"subcommand '{self.subcommand}' is only defined in base 2")
        return self
