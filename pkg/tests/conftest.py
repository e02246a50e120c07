import os
# Set env vars BEFORE importing src
os.environ["ENVIRONMENT"] = "test"
os.environ["LOG_LEVEL"] = "WARNING"
os.environ["TRACING_ENABLED"] = "false"

import numpy as np
import pytest

from src.oracle.oracle import EvolutionOracle
from src.pauli.generator import random_sparse_hamiltonian
from src.pauli.labels import PauliLabel
from src.pauli.polynomial import SparseHamiltonian


def hamiltonian(terms: dict[str, float]) -> SparseHamiltonian:
    """SparseHamiltonian from {"XZ": 0.3, ...}."""
    labels = {PauliLabel.from_string(text): value for text, value in terms.items()}
    n = next(iter(labels)).n
    return SparseHamiltonian(n, labels)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def make_hamiltonian():
    return hamiltonian


@pytest.fixture
def small_hamiltonian():
    """Seeded 2-qubit, 2-sparse instance with operator norm at most 1."""
    return random_sparse_hamiltonian(2, 2, seed=7)


@pytest.fixture
def make_oracle():
    def factory(H: SparseHamiltonian, T: float = 1.0) -> EvolutionOracle:
        return EvolutionOracle.create(H, T)
    return factory
