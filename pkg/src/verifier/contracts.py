from typing import Any, Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator


class CheckSpec(BaseModel):
    """
    Instance distribution and run settings of one check. `bound_scale`
    multiplies every right-hand side (values below 1 tamper with the constants).
    """
    model_config = ConfigDict(frozen=True)

    name: str
    n_values: tuple[int, ...] = (1, 2, 3)
    m_values: tuple[int, ...] = (1, 2, 3)
    T_values: tuple[float, ...] = (0.05, 0.5, 1.0)
    epsilon_range: tuple[float, float] = (1e-3, 0.1)
    trials: int = Field(default=200, ge=1)
    seed: int = 0
    slack: float = Field(default=1e-9, ge=0.0)
    bound_scale: float = Field(default=1.0, gt=0.0)

    @field_validator("n_values", "m_values", "T_values")
    @classmethod
    def _non_empty(cls, value: tuple) -> tuple:
        if not value:
            raise ValueError("value lists must be non-empty")
        return value

    @field_validator("n_values")
    @classmethod
    def _dense_range(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if any(n < 1 for n in value):
            raise ValueError("qubit counts must be positive")
        return value

    @field_validator("epsilon_range")
    @classmethod
    def _ordered(cls, value: tuple[float, float]) -> tuple[float, float]:
        low, high = value
        if not 0 < low <= high:
            raise ValueError(f"epsilon range must satisfy 0 < low <= high, got {value}")
        return value


class Comparison(BaseModel):
    """One inequality lhs <= rhs evaluated on one instance."""
    model_config = ConfigDict(frozen=True)

    label: str
    lhs: float
    rhs: float


class TrialOutcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    comparisons: list[Comparison] = Field(default_factory=list)
    instance: dict[str, Any] = Field(default_factory=dict)
    skipped: bool = False


class CheckReport(BaseModel):
    """Worst-case result of one check; passed iff max_violation <= slack."""
    model_config = ConfigDict(frozen=True)

    name: str
    trials: int
    skipped: int = 0
    max_violation: Optional[float] = None
    passed: bool
    worst_instance: Optional[dict[str, Any]] = None
    slack: float
    bound_scale: float = 1.0


CheckFunction = Callable[[CheckSpec, np.random.Generator], TrialOutcome]


class CheckDefinition(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    description: str
    func: CheckFunction
    defaults: dict[str, Any] = Field(default_factory=dict)
