import json
import math

import numpy as np
import pytest

from src.errors import InvalidInstanceError, RegimeError
from src.learner.orchestrator import (
    HamiltonianLearner,
    iteration_count,
    iteration_schedule,
    main_learn,
)
from src.learner.params import regime_params, relaxation_limit
from src.oracle.privileged import true_error
from src.pauli.generator import random_sparse_hamiltonian
from src.pauli.labels import PauliLabel


def observe(oracle):
    return lambda j, estimate: true_error(oracle, estimate)


def test_iteration_schedule():
    assert iteration_schedule(1, 0) == (1.0, 1 / 32, 1)
    eta, t_j, N_j = iteration_schedule(2, 3)
    assert eta == 0.125
    assert t_j == pytest.approx(0.125)
    assert N_j == 3


@pytest.mark.parametrize("epsilon,expected", [(1.0, 0), (0.5, 1), (0.25, 2), (0.01, 7)])
def test_iteration_count(epsilon, expected):
    assert iteration_count(epsilon) == expected


def test_learner_validates_parameters(make_oracle, small_hamiltonian):
    oracle = make_oracle(small_hamiltonian, T=1.0)
    with pytest.raises(InvalidInstanceError):
        HamiltonianLearner(oracle, 2, regime_params(2, 3, 1.0))
    with pytest.raises(InvalidInstanceError):
        HamiltonianLearner(oracle, 1, regime_params(2, 2, 1.0))
    with pytest.raises(InvalidInstanceError):
        HamiltonianLearner(oracle, 2, regime_params(2, 2, 0.5))
    with pytest.raises(RegimeError):
        HamiltonianLearner(oracle, 2, regime_params(2, 2, 1.0, K=4, regime="poly_sparse"))
    learner = HamiltonianLearner(oracle, 2, regime_params(2, 2, 1.0))
    with pytest.raises(InvalidInstanceError):
        learner.run(0.1, 1.5)


def test_both_branches_on_single_qubit(make_oracle, make_hamiltonian):
    """H = 0.5 Z: four standard-limit iterations, then the Heisenberg branch."""
    H = make_hamiltonian({"Z": 0.5})
    oracle = make_oracle(H, T=1.0)
    params = regime_params(1, 1, 1.0, relaxation=8192)
    estimate, report = main_learn(oracle, 1, 0.05, params, 0.05, seed=3, observer=observe(oracle))

    assert report.J == 5
    assert [r.branch for r in report.iterations] == ["sql"] * 4 + ["heisenberg"]
    assert report.iterations[-1].integer_time == 1
    assert estimate.coefficient(PauliLabel.from_string("Z")) == pytest.approx(0.5, abs=0.05)
    assert report.final_error <= 0.05
    assert report.halving_holds
    assert report.success
    assert report.ledger.t_min == 1.0
    assert report.params["literal"].c == pytest.approx(1 / 256)
    assert report.params["relaxed"].relaxation == 8192


def test_force_sql_skips_heisenberg_branch(make_oracle, make_hamiltonian):
    oracle = make_oracle(make_hamiltonian({"Z": 0.5}), T=1.0)
    params = regime_params(1, 1, 1.0, relaxation=8192)
    _, report = main_learn(oracle, 1, 0.05, params, 0.05, seed=3, force_sql=True,
                           observer=observe(oracle))
    assert {r.branch for r in report.iterations} == {"sql"}
    assert report.success


def test_two_qubit_main_loop(make_oracle):
    """n = 2, m = 2, T = 1, eps = 2^-6 with relaxation 32768 (eta_sw ~ 0.081)."""
    H = random_sparse_hamiltonian(2, 2, seed=17)
    oracle = make_oracle(H, T=1.0)
    params = regime_params(2, 2, 1.0, relaxation=32768)
    epsilon = 2.0**-6
    estimate, report = main_learn(oracle, 2, epsilon, params, 0.05, seed=1,
                                  observer=observe(oracle))

    branches = [r.branch for r in report.iterations]
    assert branches == ["sql"] * 4 + ["heisenberg"] * 2
    assert true_error(oracle, estimate) <= epsilon
    assert report.halving_holds
    assert report.ledger.t_min == 1.0
    assert estimate.sparsity <= 2
    assert all(r.t_tot_delta > 0 and r.queries_delta > 0 for r in report.iterations)


def test_zero_iterations_when_epsilon_is_one(make_oracle, small_hamiltonian):
    oracle = make_oracle(small_hamiltonian)
    estimate, report = main_learn(oracle, 2, 1.0, regime_params(2, 2, 1.0), 0.05, seed=0,
                                  observer=observe(oracle))
    assert report.J == 0
    assert estimate.sparsity == 0
    assert report.ledger.queries == 0
    assert report.final_error == small_hamiltonian.linf_norm()
    assert report.halving_holds is None


def test_report_json_is_deterministic(make_oracle, make_hamiltonian):
    def run():
        oracle = make_oracle(make_hamiltonian({"X": 0.3, "Z": -0.4}), T=1.0)
        _, report = main_learn(oracle, 2, 0.2, regime_params(2, 1, 1.0), 0.05, seed=9,
                               observer=observe(oracle))
        return report.to_json()

    first = run()
    assert first == run()
    payload = json.loads(first)
    assert payload["schema"] == 1
    assert set(payload["params"]) == {"literal", "relaxed"}
    assert list(payload["estimate"]) == sorted(payload["estimate"])
    assert payload["ledger"]["t_min"] == 1.0
    assert math.isfinite(payload["predicted_total_time"])


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(20))
def test_halving_on_random_instances(make_oracle, seed):
    """n <= 3, m <= 3, T = 1, eps = 2^-6: every recorded error halves and t_min stays T."""
    rng = np.random.default_rng(300 + seed)
    n = int(rng.integers(1, 4))
    m = int(rng.integers(1, min(3, 4**n - 1) + 1))
    H = random_sparse_hamiltonian(n, m, seed=rng)
    oracle = make_oracle(H, T=1.0)
    literal = regime_params(m, n, 1.0)
    relaxation = 0.5 * relaxation_limit(m, literal.c_F, literal.c_inf)
    params = regime_params(m, n, 1.0, relaxation=relaxation)
    epsilon = 2.0**-6
    estimate, report = main_learn(oracle, m, epsilon, params, 0.05, seed=rng,
                                  observer=observe(oracle))

    assert report.halving_holds
    assert report.success
    assert true_error(oracle, estimate) <= epsilon
    assert report.ledger.t_min == 1.0
    assert "heisenberg" in {r.branch for r in report.iterations}
