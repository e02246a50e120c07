"""
Seeded random test instances.
"""

from typing import Optional, Union

import numpy as np

from ..config import settings
from ..dense.backend import operator_norm, to_dense
from ..errors import InvalidInstanceError
from .labels import PauliLabel
from .polynomial import SparseHamiltonian

Seed = Optional[Union[int, np.random.Generator]]


def _rescale(H: SparseHamiltonian, norm_cap: float) -> SparseHamiltonian:
    if H.l1_norm() <= norm_cap:
        return H
    if H.n > settings.DENSE_MAX_QUBITS:
        # l1 bounds the operator norm when the dense form is unavailable
        return H.scale(norm_cap / H.l1_norm())
    norm = operator_norm(to_dense(H))
    if norm <= norm_cap:
        return H
    scaled = H.scale(norm_cap / norm)
    if operator_norm(to_dense(scaled)) > norm_cap:
        scaled = scaled.scale(1.0 - 1e-12)
    return scaled


def random_sparse_hamiltonian(n: int, m: int, seed: Seed = None, norm_cap: float = 1.0
                              ) -> SparseHamiltonian:
    """m distinct non-identity labels, coefficients uniform on [-1, 1] without 0,
    globally rescaled so the operator norm is at most norm_cap."""
    if n < 1:
        raise InvalidInstanceError(f"qubit count must be positive, got {n}")
    if not 1 <= m <= 4**n - 1:
        raise InvalidInstanceError(f"m must lie in [1, {4**n - 1}] for n={n}, got {m}")
    if norm_cap <= 0:
        raise InvalidInstanceError("norm_cap must be positive")
    rng = np.random.default_rng(seed)
    indices = rng.choice(4**n - 1, size=m, replace=False) + 1
    coefficients = rng.uniform(-1.0, 1.0, size=m)
    while np.any(np.abs(coefficients) < 1e-12):
        redraw = np.abs(coefficients) < 1e-12
        coefficients[redraw] = rng.uniform(-1.0, 1.0, size=int(redraw.sum()))
    terms = {
        PauliLabel.from_index(n, int(index)): float(value)
        for index, value in zip(indices, coefficients)
    }
    return _rescale(SparseHamiltonian(n, terms), norm_cap)


def perturb(H: SparseHamiltonian, epsilon: float, seed: Seed = None,
            extra_labels: int = 0) -> SparseHamiltonian:
    """H plus uniform [-epsilon, epsilon] noise on its support and on `extra_labels` new labels."""
    rng = np.random.default_rng(seed)
    terms = {label: c + rng.uniform(-epsilon, epsilon) for label, c in H.terms.items()}
    candidates = [i for i in range(1, 4**H.n) if PauliLabel.from_index(H.n, i) not in H.terms]
    count = min(extra_labels, len(candidates))
    if count:
        for index in rng.choice(candidates, size=count, replace=False):
            terms[PauliLabel.from_index(H.n, int(index))] = rng.uniform(-epsilon, epsilon)
    return SparseHamiltonian(H.n, terms)
