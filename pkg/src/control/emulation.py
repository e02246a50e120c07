"""
Long-time emulation of short Trotter steps.

With C_j = e^{iHT} e^{-iH_jT} = e^{iW_j} (up to phase), the step
e^{-iHt/N} e^{iH_jt/N} equals e^{-iH(T + t/N)} C_j e^{iH_j(T + t/N)} exactly,
so the residual evolution e^{-i(H - H_j)t} is reachable with queries of
duration T + t/N >= T once W_j has been learned from integer powers of C_j^dagger.
"""

import math
from typing import Callable, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..dense.backend import expm_i, to_dense, traceless_log, UnitaryLog
from ..dense.operator import DenseOperator
from ..errors import InvalidInstanceError, RegimeError
from ..oracle.oracle import EvolutionOracle
from ..pauli.polynomial import SparseHamiltonian
from ..tomography.budget import l2_copies
from ..tomography.contracts import EXACT, AccessMode
from ..tomography.sampling import choi_amplitudes
from ..tomography.sparse import sparse_tomo_l2
from ..utils.logging import get_logger

logger = get_logger(__name__)

Seed = Optional[Union[int, np.random.Generator]]


class IntegerEvolutionAccess:
    """
    q -> e^{-iWq} up to global phase, for positive integers q only.
    `evolve(q, copies)` must charge its own cost.
    """

    def __init__(self, evolve: Callable[[int, int], DenseOperator], unit_cost: float):
        self._evolve = evolve
        self.unit_cost = unit_cost

    @classmethod
    def from_oracle(cls, oracle: EvolutionOracle, H_j: SparseHamiltonian
                    ) -> "IntegerEvolutionAccess":
        """Backed by (C_j^dagger)^q; each unit costs T of oracle time."""
        return cls(lambda q, copies: oracle.correction_adjoint_power(H_j, q, copies), oracle.T)

    @classmethod
    def from_generator(cls, W: SparseHamiltonian, phase: float = 0.0
                       ) -> "IntegerEvolutionAccess":
        """Free access to e^{i phase q} e^{-iWq}, for tests and mocks."""
        dense = to_dense(W)
        return cls(
            lambda q, copies: expm_i(dense, q) * np.exp(1j * phase * q),
            0.0,
        )

    def __call__(self, q: int, copies: int = 1) -> DenseOperator:
        if not isinstance(q, (int, np.integer)) or isinstance(q, bool) or q < 1:
            raise InvalidInstanceError(f"integer evolution needs a positive integer, got {q!r}")
        return self._evolve(int(q), copies)


class IntegerLearnResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    estimate: SparseHamiltonian
    t: int
    delta_t: float
    copies: int


def integer_time_params(c_F: float, c_inf: float, c: float, epsilon: float) -> tuple[int, float]:
    """t = floor(c / (10 c_F c_inf eps)) and tomography accuracy c_F c_inf t^2 eps^2."""
    t = math.floor(c / (10 * c_F * c_inf * epsilon))
    return t, c_F * c_inf * t**2 * epsilon**2


def integer_evol_learn(access: IntegerEvolutionAccess, s: int, c_F: float, c_inf: float,
                       c: float, epsilon: float, delta: float, seed: Seed = None,
                       mode: AccessMode = EXACT, relaxation: float = 1.0
                       ) -> IntegerLearnResult:
    """Learn W within c*eps in normalized Frobenius norm from e^{-iWt} at integer t."""
    t, delta_t = integer_time_params(c_F, c_inf, c, epsilon)
    if t < 1:
        raise RegimeError(
            f"epsilon={epsilon:.6g} is above the switch threshold {c / (10 * c_F * c_inf):.6g}"
        )
    if delta_t >= 1:
        raise RegimeError(
            f"tomography accuracy {delta_t:.6g} at t={t} is not below 1; c={c:.6g} is too large"
        )
    copies = l2_copies(s, delta_t, delta, relaxation)
    unitary = access(t, copies)
    state = choi_amplitudes(unitary, mode)
    result = sparse_tomo_l2(state, s, delta_t, delta, seed=seed, relaxation=relaxation)

    # beta_x ~ -i t W_x after phase correction
    terms = {
        label: -complex(value).imag / t
        for label, value in result.coefficients.terms.items()
        if not label.is_identity
    }
    estimate = SparseHamiltonian(unitary.n, terms)
    logger.debug(f"integer-time learning: t={t}, accuracy {delta_t:.3g}, copies {copies}")
    return IntegerLearnResult(estimate=estimate, t=t, delta_t=delta_t, copies=copies)


def correction_generator(H: SparseHamiltonian, H_j: SparseHamiltonian, T: float) -> UnitaryLog:
    """Dense W_j with C_j^dagger = e^{-iW_j} up to phase."""
    adjoint = expm_i(to_dense(H_j), -T) @ expm_i(to_dense(H), T)
    return traceless_log(adjoint)


def residual_unitary(oracle: EvolutionOracle, H_j: SparseHamiltonian, W_j: SparseHamiltonian,
                     t_j: float, N_j: int, copies: int = 1) -> DenseOperator:
    """(e^{-iH tau} e^{iW_j} e^{iH_j tau})^{N_j} with tau = T + t_j/N_j.

    Charges N_j queries of duration tau per copy; the known factors are free.
    """
    if N_j < 1:
        raise InvalidInstanceError(f"N_j must be a positive integer, got {N_j}")
    if t_j <= 0:
        raise InvalidInstanceError(f"t_j must be positive, got {t_j}")
    tau = oracle.T + t_j / N_j
    evolution = oracle.query_evolution(tau, copies=N_j * copies, kind="residual")
    step = evolution @ expm_i(to_dense(W_j), -1.0) @ expm_i(to_dense(H_j), -tau)
    return step.power(N_j)


def trotter_product(H: SparseHamiltonian, H_j: SparseHamiltonian, t: float, N: int
                    ) -> DenseOperator:
    """Short-time product (e^{-iHt/N} e^{iH_jt/N})^N, computed densely."""
    step = expm_i(to_dense(H), t / N) @ expm_i(to_dense(H_j), -t / N)
    return step.power(N)


def emulation_error_bound(t: float, N: int, min_norm: float, residual_F: float,
                          correction_gap_F: float) -> float:
    """Trotter term t^2 min(||H||, ||H_j||) ||H - H_j||_F / N plus N ||W_j - W~_j||_F."""
    return t**2 * min_norm * residual_F / N + N * correction_gap_F
