import numpy as np
import pytest

from src.dense.backend import expm_i, to_dense
from src.errors import DimensionError
from src.learner.params import regime_params
from src.learner.sparse_ham import sparse_ham_copies, sparse_ham_learn, sparse_ham_params
from src.learner.sql import sql_copies, sql_learn, sql_params
from src.pauli.generator import perturb, random_sparse_hamiltonian
from src.pauli.labels import PauliLabel
from src.pauli.polynomial import SparseHamiltonian
from src.tomography.budget import linf_copies


def exact_provider(A: SparseHamiltonian, calls: list):
    dense = to_dense(A)

    def provider(t, copies):
        calls.append((t, copies))
        return expm_i(dense, t)
    return provider


def test_sparse_ham_params_example():
    t, accuracy = sparse_ham_params(1, 1 / 32)
    assert t == pytest.approx(1.0)
    assert accuracy == pytest.approx(1 / 32**2)
    assert sparse_ham_copies(1, 1 / 32, 0.1) == linf_copies(1, accuracy, 0.1)


def test_sparse_ham_learn_recovers_small_residual(make_hamiltonian):
    A = make_hamiltonian({"X": 0.01, "Z": -0.02})
    calls = []
    estimate = sparse_ham_learn(exact_provider(A, calls), 2, 0.02, 0.05, seed=0)
    assert (estimate - A).linf_norm() <= 0.02 / 8
    assert estimate.support == A.support
    assert calls == [(pytest.approx(1 / (32 * 2 * 0.02)), sparse_ham_copies(2, 0.02, 0.05))]


@pytest.mark.parametrize("seed", range(20))
def test_sparse_ham_learn_random_residuals(seed):
    """Random m-sparse residuals with ||A||_linf <= eps are learned to eps/8."""
    rng = np.random.default_rng(seed)
    n, m, epsilon = 2, int(rng.integers(1, 4)), 0.05
    A = random_sparse_hamiltonian(n, m, seed=rng)
    A = A.scale(epsilon / A.linf_norm() * rng.uniform(0.2, 1.0))
    estimate = sparse_ham_learn(exact_provider(A, []), m, epsilon, 0.05, seed=rng)
    assert (estimate - A).linf_norm() <= epsilon / 8


def test_sql_params():
    assert sql_params(4, 0.1)[0] == pytest.approx(1 / 32)
    t, delta_t = sql_params(16, 0.1)
    assert t == pytest.approx(1 / 64)
    assert delta_t == pytest.approx(4 * 0.1 / 64**2)


def test_sql_learn_single_qubit(make_oracle, make_hamiltonian):
    H = make_hamiltonian({"Z": 0.5})
    oracle = make_oracle(H, T=1.0)
    params = regime_params(1, 1, 1.0)
    update = sql_learn(oracle, SparseHamiltonian.zero(1), 1, 0.5, params, 0.05, seed=0)
    assert update.coefficient(PauliLabel.from_string("Z")) == pytest.approx(0.5, abs=1e-3)
    ledger = oracle.ledger()
    copies = sql_copies(1, 0.5, params, 0.05)
    assert ledger.queries == 2 * copies
    assert ledger.t_min == 1.0
    assert ledger.t_tot == pytest.approx(copies * (2.0 + 1 / 16))


@pytest.mark.parametrize("seed", range(10))
def test_sql_learn_two_qubits(make_oracle, seed):
    """n = 2, m = 2, T = 1, eps = 0.1: the update is within eps/4 of H - A_0."""
    rng = np.random.default_rng(100 + seed)
    H = random_sparse_hamiltonian(2, 2, seed=rng)
    A_0 = perturb(H, 0.1, seed=rng)
    oracle = make_oracle(H, T=1.0)
    update = sql_learn(oracle, A_0, 2, 0.1, regime_params(2, 2, 1.0), 0.05, seed=rng)
    assert (update - (H - A_0)).linf_norm() <= 0.1 / 4


def test_sql_learn_checks_dimensions(make_oracle, small_hamiltonian):
    with pytest.raises(DimensionError):
        sql_learn(make_oracle(small_hamiltonian), SparseHamiltonian.zero(1), 2, 0.1,
                  regime_params(2, 2, 1.0), 0.05)


@pytest.mark.slow
def test_sparse_ham_learn_success_rate():
    """Random m <= 3 residuals with ||A||_linf <= eps: error <= eps/8 in >= 95 of 100 trials."""
    epsilon = 0.05
    successes = 0
    for seed in range(100):
        rng = np.random.default_rng(5000 + seed)
        n = int(rng.integers(1, 3))
        m = int(rng.integers(1, min(3, 4**n - 1) + 1))
        A = random_sparse_hamiltonian(n, m, seed=rng)
        A = A.scale(epsilon / A.linf_norm() * rng.uniform(0.1, 1.0))
        estimate = sparse_ham_learn(exact_provider(A, []), m, epsilon, 0.05, seed=rng)
        successes += (estimate - A).linf_norm() <= epsilon / 8
    assert successes >= 95


@pytest.mark.slow
def test_sql_learn_success_rate(make_oracle):
    """n = 2, m = 2, T = 1, eps = 0.1: the update is within eps/4 in >= 95 of 100 trials."""
    params = regime_params(2, 2, 1.0)
    successes = 0
    for seed in range(100):
        rng = np.random.default_rng(7000 + seed)
        H = random_sparse_hamiltonian(2, 2, seed=rng)
        A_0 = perturb(H, 0.1, seed=rng)
        oracle = make_oracle(H, T=1.0)
        update = sql_learn(oracle, A_0, 2, 0.1, params, 0.05, seed=rng)
        successes += (update - (H - A_0)).linf_norm() <= 0.1 / 4
        assert oracle.ledger().t_min == 1.0
    assert successes >= 95
