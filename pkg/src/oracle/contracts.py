import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_serializer

from ..pauli.polynomial import SparseHamiltonian


class OracleConfig(BaseModel):
    """
    Hidden Hamiltonian plus the minimum evolution time T.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    hamiltonian: SparseHamiltonian
    T: float = Field(gt=0, description="Minimum evolution time")
    mode: Literal["exact"] = "exact"


class QueryLedger(BaseModel):
    """
    Snapshot of the resource counters: total evolution time, shortest granted
    evolution time and number of queries.
    """
    model_config = ConfigDict(frozen=True)

    t_tot: float = 0.0
    t_min: float = Field(default=math.inf, description="+inf until the first query")
    queries: int = 0

    @field_serializer("t_min")
    def _serialize_t_min(self, value: float) -> Optional[float]:
        return None if math.isinf(value) else value

    def delta(self, earlier: "QueryLedger") -> "QueryLedger":
        """Counters accrued since `earlier` (t_min is this snapshot's)."""
        return QueryLedger(
            t_tot=self.t_tot - earlier.t_tot,
            t_min=self.t_min,
            queries=self.queries - earlier.queries,
        )
