import math

import numpy as np
import pytest

from src.dense.backend import expm_i, to_dense
from src.errors import InvalidInstanceError
from src.pauli.generator import random_sparse_hamiltonian
from src.pauli.labels import PauliLabel
from src.pauli.polynomial import SparseHamiltonian
from src.tomography.budget import l2_copies, linf_copies
from src.tomography.contracts import SAMPLED, AccessMode
from src.tomography.sampling import choi_amplitudes
from src.tomography.sparse import sparse_tomo_l2, sparse_tomo_linf

I1, Z1 = PauliLabel.from_string("I"), PauliLabel.from_string("Z")


def z_rotation(theta):
    return expm_i(to_dense(SparseHamiltonian(1, {Z1: 1.0})), theta)


def test_linf_exact_mode_removes_global_phase():
    theta = 0.2
    access = choi_amplitudes(z_rotation(theta)).with_global_phase(0.4)
    result = sparse_tomo_linf(access, 1, 0.3, 0.1)
    c = math.cos(theta)
    assert result.coefficients.coefficient(I1) == pytest.approx(c * c)
    assert result.coefficients.coefficient(Z1) == pytest.approx(-1j * c * math.sin(theta))
    assert result.copies == linf_copies(1, 0.3, 0.1)
    assert I1 in result.support


def test_l2_without_phase_correction_keeps_raw_amplitudes():
    access = choi_amplitudes(z_rotation(0.2))
    result = sparse_tomo_l2(access, 1, 0.3, 0.1, phase_correct=False)
    assert result.coefficients.coefficient(I1) == pytest.approx(math.cos(0.2))
    assert result.support == frozenset({I1, Z1})
    assert result.copies == l2_copies(1, 0.3, 0.1)


def test_exact_support_is_capped_at_s_plus_one():
    U = expm_i(to_dense(random_sparse_hamiltonian(2, 5, seed=2)), 0.5)
    result = sparse_tomo_l2(choi_amplitudes(U), 2, 0.3, 0.1)
    assert len(result.support) <= 3
    assert PauliLabel.identity(2) in result.support


def test_invalid_arguments():
    access = choi_amplitudes(z_rotation(0.1))
    with pytest.raises(InvalidInstanceError):
        sparse_tomo_linf(access, 0, 0.1, 0.1)
    with pytest.raises(InvalidInstanceError):
        sparse_tomo_linf(access, 1, 1.5, 0.1)
    with pytest.raises(InvalidInstanceError):
        sparse_tomo_l2(access, 1, 0.1, 0.0)


def test_linf_sampled_mode_meets_accuracy():
    theta = 0.3
    access = choi_amplitudes(z_rotation(theta), SAMPLED)
    result = sparse_tomo_linf(access, 1, 0.3, 0.1, seed=5)
    c = math.cos(theta)
    assert result.coefficients.coefficient(Z1) == pytest.approx(-1j * c * math.sin(theta), abs=0.3)
    assert abs(result.coefficients.coefficient(I1) - c * c) <= 0.3


def test_noisy_mode_is_seeded():
    access = choi_amplitudes(z_rotation(0.3), AccessMode(sigma=0.01))
    first = sparse_tomo_l2(access, 1, 0.2, 0.1, seed=7)
    second = sparse_tomo_l2(access, 1, 0.2, 0.1, seed=7)
    assert first.coefficients == second.coefficients


@pytest.mark.slow
@pytest.mark.parametrize("routine,norm", [(sparse_tomo_linf, np.inf), (sparse_tomo_l2, 2)])
def test_sampled_failure_rate_within_delta(routine, norm):
    """Monte Carlo over 200 seeds: empirical failure rate at most delta + 3 sigma."""
    epsilon, delta, trials = 0.3, 0.1, 200
    U = expm_i(to_dense(SparseHamiltonian(1, {Z1: 0.3, PauliLabel.from_string("X"): 0.2})), 0.2)
    exact = choi_amplitudes(U)
    beta = exact.amplitudes
    target = np.conj(beta[0]) * beta
    failures = 0
    for seed in range(trials):
        result = routine(exact.with_mode(SAMPLED), 1, epsilon, delta, seed=seed)
        estimate = np.zeros_like(beta)
        for label, value in result.coefficients.terms.items():
            estimate[label.index] = value
        if np.linalg.norm(estimate - target, ord=norm) > epsilon:
            failures += 1
    sigma = math.sqrt(delta * (1 - delta) / trials)
    assert failures / trials <= delta + 3 * sigma
