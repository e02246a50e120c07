"""
Harness-only access to the hidden Hamiltonian.

Used by tests, the verifier checks and the CLI's true-error telemetry. Nothing
under `src.learner` imports this module.
"""

from ..pauli.polynomial import SparseHamiltonian
from .oracle import EvolutionOracle


def reveal_hamiltonian(oracle: EvolutionOracle) -> SparseHamiltonian:
    return oracle._EvolutionOracle__hamiltonian  # type: ignore[attr-defined]


def true_error(oracle: EvolutionOracle, estimate: SparseHamiltonian) -> float:
    """l-infinity coefficient error of an estimate against the hidden Hamiltonian."""
    return (reveal_hamiltonian(oracle) - estimate).linf_norm()
