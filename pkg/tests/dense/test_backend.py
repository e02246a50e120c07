import numpy as np
import pytest
import scipy.linalg

from src.dense.backend import (
    expm_i,
    normalized_frobenius,
    operator_norm,
    pauli_decompose,
    random_hermitian,
    random_unitary,
    to_dense,
    traceless_log,
    unitary_distance,
)
from src.dense.operator import DenseOperator
from src.errors import DimensionError, NotHermitianError, NotUnitaryError
from src.pauli.generator import random_sparse_hamiltonian
from src.pauli.labels import PauliLabel, all_labels
from src.pauli.polynomial import PauliExpansion, SparseHamiltonian


def test_decompose_inverts_to_dense(rng):
    terms = {label: complex(*rng.normal(size=2)) for label in all_labels(3)}
    P = PauliExpansion(3, terms)
    assert pauli_decompose(to_dense(P)).allclose(P, atol=1e-12)


def test_dense_path_for_many_terms_matches_sparse_path():
    """Both layouts of to_dense agree (sparse loop below 2^n terms, blocked above)."""
    H = random_sparse_hamiltonian(2, 10, seed=4)
    loop = sum(
        (c * to_dense(PauliExpansion(2, {label: 1.0})).matrix for label, c in H.terms.items()),
        np.zeros((4, 4), dtype=complex),
    )
    assert np.allclose(to_dense(H).matrix, loop)


def test_expm_matches_scipy(small_hamiltonian):
    h = to_dense(small_hamiltonian).matrix
    assert np.allclose(expm_i(h, 0.7).matrix, scipy.linalg.expm(-0.7j * h))


def test_traceless_log_recovers_generator_and_phase(make_hamiltonian):
    W = to_dense(make_hamiltonian({"XZ": 0.3, "YI": -0.2}))
    U = expm_i(W, 1.0) * np.exp(0.3j)
    log = traceless_log(U)
    assert np.allclose(log.generator.matrix, W.matrix, atol=1e-10)
    assert log.phase == pytest.approx(-0.3)
    assert not log.branch_ambiguous


def test_traceless_log_flags_branch_cut():
    log = traceless_log(np.diag([1.0, -1.0]).astype(complex))
    assert log.branch_ambiguous
    assert abs(np.trace(log.generator.matrix)) < 1e-12


def test_unitary_distance_ignores_global_phase():
    U = random_unitary(2, seed=3)
    assert unitary_distance(U, U * np.exp(0.7j)) == pytest.approx(0.0, abs=1e-7)
    Z = to_dense(SparseHamiltonian(1, {PauliLabel.from_string("Z"): 1.0}))
    assert unitary_distance(DenseOperator.identity(1), Z) == pytest.approx(np.sqrt(2))


@pytest.mark.parametrize("seed", range(50))
def test_unitary_distance_vanishes_at_machine_precision(seed):
    U = random_unitary(3, seed=seed)
    assert unitary_distance(U, U) <= 1e-12
    assert unitary_distance(U, U * np.exp(-2.1j)) <= 1e-12
    log = traceless_log(U)
    assert unitary_distance(U, expm_i(log.generator, 1.0)) <= 1e-9


def test_unitary_distance_is_symmetric():
    U, V = random_unitary(2, seed=11), random_unitary(2, seed=12)
    assert unitary_distance(U, V) == pytest.approx(unitary_distance(V, U), abs=1e-12)
    assert 0.0 < unitary_distance(U, V) <= np.sqrt(2)


def test_norms():
    Z = to_dense(SparseHamiltonian(1, {PauliLabel.from_string("Z"): 1.0}))
    assert operator_norm(Z) == pytest.approx(1.0)
    assert normalized_frobenius(DenseOperator.identity(2)) == pytest.approx(1.0)
    H = random_hermitian(2, seed=1, scale=0.5)
    assert operator_norm(H) == pytest.approx(0.5)


def test_random_unitary_is_unitary():
    assert random_unitary(3, seed=0).is_unitary()


def test_kernels_validate_inputs():
    with pytest.raises(NotHermitianError):
        expm_i(np.array([[0, 1], [0, 0]], dtype=complex), 1.0)
    with pytest.raises(NotUnitaryError):
        traceless_log(np.diag([1.0, 0.5]).astype(complex))
    with pytest.raises(DimensionError):
        unitary_distance(np.eye(2), np.eye(4))


def test_dense_cap():
    with pytest.raises(DimensionError):
        to_dense(SparseHamiltonian.zero(9))


def test_dense_operator_shape_checks():
    with pytest.raises(DimensionError):
        DenseOperator(np.eye(3))
    with pytest.raises(DimensionError):
        DenseOperator(np.ones((2, 4)))
    with pytest.raises(DimensionError):
        DenseOperator.identity(1) @ DenseOperator.identity(2)


def test_dense_operator_is_immutable():
    op = DenseOperator.identity(1)
    with pytest.raises(ValueError):
        op.matrix[0, 0] = 2.0
    assert op.n == 1 and op.dim == 2
    assert np.allclose(op.power(3).matrix, np.eye(2))
