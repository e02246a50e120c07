"""
Standard-quantum-limit learner for the large-error regime.

Learns U(T) = e^{-iAT} e^{iA_0T} and U(T+t) = e^{-iA(T+t)} e^{iA_0(T+t)} up to
global phases, then recombines e^{iA_0T} U(T)^dagger U(T+t) e^{-iA_0T}
= e^{-iAt} e^{iA_0t}, which is close to I - i(A - A_0)t for t = 1/(16 sqrt(m)).
Only evolutions of duration T and T + t are queried.
"""

import math
from typing import Optional, Union

import numpy as np

from ..dense.backend import expm_i, pauli_decompose, to_dense
from ..errors import DimensionError, InvalidInstanceError
from ..oracle.oracle import EvolutionOracle
from ..pauli.labels import PauliLabel
from ..pauli.polynomial import SparseHamiltonian
from ..tomography.budget import l2_copies
from ..tomography.contracts import EXACT, AccessMode
from ..tomography.sampling import choi_amplitudes
from ..tomography.sparse import sparse_tomo_l2
from ..utils.logging import get_logger
from .contracts import RegimeParams

logger = get_logger(__name__)

Seed = Optional[Union[int, np.random.Generator]]


def sql_params(m: int, epsilon: float) -> tuple[float, float]:
    """t = 1/(16 sqrt(m)) and delta_t = sqrt(m) eps t^2."""
    if m < 1:
        raise InvalidInstanceError(f"m must be positive, got {m}")
    t = 1.0 / (16 * math.sqrt(m))
    return t, math.sqrt(m) * epsilon * t**2


def sql_copies(m: int, epsilon: float, params: RegimeParams, delta: float) -> int:
    """Copies of each of the two learned Choi states."""
    _, delta_t = sql_params(m, epsilon)
    return l2_copies(params.s, delta_t / 2, delta / 2, params.relaxation)


def sql_learn(oracle: EvolutionOracle, A_0: SparseHamiltonian, m: int, epsilon: float,
              params: RegimeParams, delta: float, seed: Seed = None, mode: AccessMode = EXACT
              ) -> SparseHamiltonian:
    """Estimate A - A_0 within eps/4 in l-infinity norm w.p. 1 - delta."""
    if A_0.n != oracle.n:
        raise DimensionError(f"A_0 acts on {A_0.n} qubits, oracle on {oracle.n}")
    t, delta_t = sql_params(m, epsilon)
    T = oracle.T
    rng = np.random.default_rng(seed)
    copies = sql_copies(m, epsilon, params, delta)
    known = to_dense(A_0)

    estimates = []
    for duration in (T, T + t):
        unitary = oracle.query_evolution(duration, copies=copies) @ expm_i(known, -duration)
        result = sparse_tomo_l2(
            choi_amplitudes(unitary, mode), params.s, delta_t / 2, delta / 2,
            seed=rng, relaxation=params.relaxation, phase_correct=False,
        )
        estimates.append(to_dense(result.coefficients))
    U_T, U_Tt = estimates

    frame = expm_i(known, -T)
    U_t = frame @ U_T.dagger() @ U_Tt @ frame.dagger()
    coefficients = pauli_decompose(U_t)
    anchor = np.conj(coefficients.coefficient(PauliLabel.identity(oracle.n)))

    update = SparseHamiltonian(oracle.n, {
        label: -(anchor * value).imag / t
        for label, value in coefficients.terms.items()
        if not label.is_identity
    })
    logger.debug(f"standard-limit update: t={t:.6g}, delta_t={delta_t:.3g}, copies {copies}")
    return update
