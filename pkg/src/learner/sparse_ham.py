"""
Sparse Hamiltonian learning in l-infinity norm from a residual unitary.

For traceless m-sparse A with ||A||_linf <= eps and t = 1/(32 m eps), the
decoded Choi state of e^{-iAt} is within m t^2 eps^2 (l-infinity) of
|0> - i t sum_x alpha_x |x>, so alpha_x = -Im(beta_x) / t up to eps/16.
"""

from typing import Callable, Optional, Union

import numpy as np

from ..dense.operator import DenseOperator
from ..errors import InvalidInstanceError
from ..pauli.polynomial import SparseHamiltonian
from ..tomography.budget import linf_copies
from ..tomography.contracts import EXACT, AccessMode
from ..tomography.sampling import choi_amplitudes
from ..tomography.sparse import sparse_tomo_linf
from ..utils.logging import get_logger

logger = get_logger(__name__)

Seed = Optional[Union[int, np.random.Generator]]

# (t, copies) -> U(t); the provider pays for its own copies
ResidualProvider = Callable[[float, int], DenseOperator]


def sparse_ham_params(m: int, epsilon: float) -> tuple[float, float]:
    """Evolution time 1/(32 m eps) and tomography accuracy m t^2 eps^2."""
    if m < 1:
        raise InvalidInstanceError(f"m must be positive, got {m}")
    if epsilon <= 0:
        raise InvalidInstanceError(f"epsilon must be positive, got {epsilon}")
    t = 1.0 / (32 * m * epsilon)
    return t, m * t**2 * epsilon**2


def sparse_ham_copies(m: int, epsilon: float, delta: float, relaxation: float = 1.0) -> int:
    _, accuracy = sparse_ham_params(m, epsilon)
    return linf_copies(m, accuracy, delta, relaxation)


def sparse_ham_learn(provider: ResidualProvider, m: int, epsilon: float, delta: float,
                     seed: Seed = None, mode: AccessMode = EXACT, relaxation: float = 1.0
                     ) -> SparseHamiltonian:
    """Estimate A with ||A - A~||_linf <= eps/8 w.p. 1 - delta."""
    t, accuracy = sparse_ham_params(m, epsilon)
    copies = linf_copies(m, accuracy, delta, relaxation)
    state = choi_amplitudes(provider(t, copies), mode)
    result = sparse_tomo_linf(state, m, accuracy, delta, seed=seed, relaxation=relaxation)

    estimate = SparseHamiltonian(state.n, {
        label: -complex(value).imag / t
        for label, value in result.coefficients.terms.items()
        if not label.is_identity
    })
    logger.debug(f"sparse coefficient extraction: t={t:.6g}, {estimate.sparsity} terms")
    return estimate
