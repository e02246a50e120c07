from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from ..errors import InvalidInstanceError
from ..pauli.labels import PauliLabel
from ..pauli.polynomial import PauliExpansion


class AccessMode(BaseModel):
    """
    How a routine reads a state: exact amplitudes (optionally with complex
    Gaussian noise of scale sigma, then renormalized) or i.i.d. measurement
    samples.
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["exact", "sampled"] = "exact"
    sigma: float = Field(default=0.0, ge=0.0)

    @property
    def label(self) -> str:
        if self.kind == "sampled":
            return "sampled"
        return f"noisy:{self.sigma!r}" if self.sigma > 0 else "exact"


EXACT = AccessMode()
SAMPLED = AccessMode(kind="sampled")


def parse_mode(text: str) -> AccessMode:
    """Parse `exact`, `noisy:<sigma>` or `sampled`."""
    text = text.strip().lower()
    if text == "exact":
        return EXACT
    if text == "sampled":
        return SAMPLED
    if text.startswith("noisy:"):
        try:
            sigma = float(text.split(":", 1)[1])
        except ValueError:
            raise InvalidInstanceError(f"invalid noise level in mode '{text}'")
        if sigma < 0:
            raise InvalidInstanceError("noise level must be non-negative")
        return AccessMode(kind="exact", sigma=sigma)
    raise InvalidInstanceError(f"unknown mode '{text}' (expected exact, noisy:<sigma>, sampled)")


class TomographyResult(BaseModel):
    """
    Estimated amplitudes (zero off the reported support), the failure budget
    spent and the number of state copies consumed.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    coefficients: PauliExpansion
    support: frozenset[PauliLabel]
    delta: float
    copies: int
    accuracy: float
