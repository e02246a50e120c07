from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_serializer, model_validator

from ..config import settings
from ..oracle.contracts import QueryLedger
from ..pauli.polynomial import SparseHamiltonian

Regime = Literal["log_sparse", "poly_sparse"]
Branch = Literal["heisenberg", "sql"]


class RegimeParams(BaseModel):
    """
    Global constants of the main loop: the sparsity s of the correction
    generator, its norm constants c_F and c_inf, the target constant c and the
    switch threshold eta_sw = c / (10 c_F c_inf).
    """
    model_config = ConfigDict(frozen=True)

    regime: Regime
    m: int = Field(ge=1)
    n: int = Field(ge=1)
    T: float = Field(gt=0)
    s: int = Field(ge=1)
    c_F: float = Field(gt=0)
    c_inf: float = Field(gt=0)
    c: float = Field(gt=0)
    eta_sw: float = Field(gt=0)
    K: Optional[int] = None
    relaxation: float = Field(default=1.0, ge=1.0)

    @model_validator(mode="after")
    def _check_switch(self) -> "RegimeParams":
        expected = self.c / (10 * self.c_F * self.c_inf)
        if abs(self.eta_sw - expected) > 1e-12 * max(1.0, expected):
            raise ValueError(f"eta_sw={self.eta_sw!r} differs from c/(10 c_F c_inf)={expected!r}")
        if self.regime == "poly_sparse" and self.K is None:
            raise ValueError("poly_sparse parameters need K")
        return self


class IterationRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    j: int
    eta: float
    t_j: float
    N_j: int
    branch: Branch
    integer_time: Optional[int] = None  # t of the integer-time learner, Heisenberg branch only
    copies: int = 0
    true_error: Optional[float] = None
    t_tot_delta: float
    queries_delta: int


class LearnReport(BaseModel):
    """
    Full record of one main-loop run. Serializes deterministically: no wall
    clock, labels sorted.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    schema_version: int = Field(default=settings.REPORT_SCHEMA_VERSION, serialization_alias="schema")
    params: dict[str, RegimeParams]
    epsilon: float
    delta: float
    seed: Optional[int] = None
    mode: str = "exact"
    J: int
    iterations: list[IterationRecord] = Field(default_factory=list)
    estimate: SparseHamiltonian
    final_error: Optional[float] = None
    ledger: QueryLedger
    predicted_total_time: float
    sparsity_matches: bool

    @field_serializer("estimate")
    def _serialize_estimate(self, value: SparseHamiltonian) -> dict[str, float]:
        return {str(label): coefficient for label, coefficient in value.items()}

    @computed_field
    @property
    def halving_holds(self) -> Optional[bool]:
        """True errors satisfy ||H - H_{j+1}||_linf <= eta_j / 2 at every iteration."""
        errors = [record.true_error for record in self.iterations]
        if not errors or any(error is None for error in errors):
            return None
        return all(
            record.true_error <= record.eta / 2 + 1e-12 for record in self.iterations
        )

    @computed_field
    @property
    def success(self) -> Optional[bool]:
        if self.final_error is None:
            return None
        return self.final_error <= self.epsilon and self.ledger.t_min == self.params["relaxed"].T

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)
