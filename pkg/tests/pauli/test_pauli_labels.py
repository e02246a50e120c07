import numpy as np
import pytest

from src.dense.backend import pauli_label_matrix
from src.errors import DimensionError, InvalidInstanceError
from src.pauli.labels import PauliLabel, all_labels, pauli_mul

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def test_string_round_trip():
    label = PauliLabel.from_string("XZ")
    assert (label.n, label.a, label.b) == (2, 0b10, 0b01)
    assert str(label) == "XZ"
    assert label.index == (0b10 << 2) | 0b01


def test_y_is_both_bits():
    label = PauliLabel.from_string("y")
    assert (label.a, label.b) == (1, 1)
    assert np.allclose(pauli_label_matrix(label).matrix, Y)


def test_leftmost_character_is_first_tensor_factor():
    assert np.allclose(pauli_label_matrix(PauliLabel.from_string("XZ")).matrix, np.kron(X, Z))
    assert np.allclose(pauli_label_matrix(PauliLabel.from_string("IY")).matrix, np.kron(I2, Y))


def test_single_qubit_products():
    x, y, z = (PauliLabel.from_string(c) for c in "XYZ")
    assert pauli_mul(x, z) == (-1j, y)
    assert pauli_mul(z, x) == (1j, y)
    assert pauli_mul(y, y) == (1, PauliLabel.identity(1))


def test_products_match_dense_multiplication():
    """Every pair of 2-qubit labels multiplies like the matrices do."""
    for x in all_labels(2):
        for y in all_labels(2):
            phase, z = pauli_mul(x, y)
            expected = pauli_label_matrix(x).matrix @ pauli_label_matrix(y).matrix
            assert np.allclose(phase * pauli_label_matrix(z).matrix, expected)


def test_commutation_and_weight():
    assert not PauliLabel.from_string("X").commutes_with(PauliLabel.from_string("Z"))
    assert PauliLabel.from_string("XX").commutes_with(PauliLabel.from_string("ZZ"))
    assert PauliLabel.from_string("XIZ").weight == 2
    assert PauliLabel.identity(3).is_identity


def test_all_labels_in_index_order():
    assert [str(label) for label in all_labels(1)] == ["I", "Z", "X", "Y"]
    assert len(list(all_labels(3))) == 64


def test_invalid_labels_rejected():
    with pytest.raises(InvalidInstanceError):
        PauliLabel.from_string("XQ")
    with pytest.raises(InvalidInstanceError):
        PauliLabel.from_string("")
    with pytest.raises(InvalidInstanceError):
        PauliLabel(1, 2, 0)


def test_mixed_qubit_counts_rejected():
    with pytest.raises(DimensionError):
        pauli_mul(PauliLabel.from_string("X"), PauliLabel.from_string("XX"))
