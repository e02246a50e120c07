from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..errors import InvalidInstanceError
from ..tomography.contracts import AccessMode, parse_mode

Subcommand = Literal["gen", "learn", "sweep", "verify"]


class RunConfig(BaseModel):
    """
    Validated parameters of one CLI invocation. Everything is checked here,
    before any oracle is built.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    subcommand: Subcommand
    n: Optional[int] = Field(default=None, ge=1)
    m: Optional[int] = Field(default=None, ge=1)
    T: float = Field(default=1.0, gt=0)
    epsilon: Optional[float] = Field(default=None, gt=0, lt=1)
    epsilons: list[float] = Field(default_factory=list)
    K: Optional[int] = Field(default=None, ge=2)
    regime: Literal["log_sparse", "poly_sparse"] = "log_sparse"
    rho: float = Field(default=1.0, ge=1.0)
    delta: float = Field(default=0.05, gt=0, lt=1)
    seed: Optional[int] = Field(default=None, ge=0)
    mode: AccessMode = Field(default_factory=AccessMode)
    force_sql: bool = False
    input: Optional[Path] = None
    output: Optional[Path] = None
    checks: list[str] = Field(default_factory=list)
    trials: Optional[int] = Field(default=None, ge=1)
    bound_scale: float = Field(default=1.0, gt=0)

    @field_validator("mode", mode="before")
    @classmethod
    def _parse_mode(cls, value):
        if not isinstance(value, str):
            return value
        try:
            return parse_mode(value)
        except InvalidInstanceError as e:
            raise ValueError(str(e))

    @field_validator("regime", mode="before")
    @classmethod
    def _regime_alias(cls, value):
        aliases = {"log": "log_sparse", "poly": "poly_sparse"}
        return aliases.get(value, value)

    @field_validator("epsilons")
    @classmethod
    def _epsilons_in_range(cls, value: list[float]) -> list[float]:
        if any(not 0 < eps < 1 for eps in value):
            raise ValueError("every epsilon must lie in (0, 1)")
        if len(set(value)) != len(value):
            raise ValueError("epsilon values must be distinct")
        return value

    @field_validator("input")
    @classmethod
    def _input_exists(cls, value: Optional[Path]) -> Optional[Path]:
        if value is not None and not value.is_file():
            raise ValueError(f"input file {value} does not exist")
        return value

    @model_validator(mode="after")
    def _per_subcommand(self) -> "RunConfig":
        if self.n is not None and self.m is not None and self.m > 4**self.n - 1:
            raise ValueError(f"m must be at most {4**self.n - 1} for n={self.n}")
        if self.regime == "poly_sparse" and self.K is None:
            raise ValueError("--regime poly needs --K")
        if self.subcommand == "gen":
            if self.n is None or self.m is None:
                raise ValueError("gen needs --n and --m")
        if self.subcommand in ("learn", "sweep"):
            if self.seed is None:
                raise ValueError(f"{self.subcommand} needs --seed")
            if self.m is None:
                raise ValueError(f"{self.subcommand} needs --m; the sparsity is never inferred")
            if self.input is None and self.n is None:
                raise ValueError(f"{self.subcommand} needs --in or --n")
        if self.subcommand == "learn" and self.epsilon is None:
            raise ValueError("learn needs --epsilon")
        if self.subcommand == "sweep":
            if len(self.epsilons) < 4:
                raise ValueError("sweep needs at least 4 --epsilons values")
            if self.output is None:
                raise ValueError("sweep needs --out for the CSV")
        return self
