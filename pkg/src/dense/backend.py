"""
Spectral kernels on dense operators.

Exponentials and logarithms go through eigendecompositions only: inputs are
Hermitian (eigh) or unitary (complex Schur form, diagonal for normal matrices).
Pauli transforms use the layout (P_x)_{c xor a, c} = i^{a.b} (-1)^{b.c}, so a
full decomposition is one Walsh-Hadamard product per X-part.
"""

from functools import lru_cache
from typing import NamedTuple, Optional, Union

import numpy as np
import scipy.linalg
from scipy.stats import unitary_group

from ..config import settings
from ..errors import DimensionError, NotHermitianError, NotUnitaryError
from ..pauli.labels import PauliLabel
from ..pauli.polynomial import PauliExpansion, PauliPolynomial
from ..utils.logging import get_logger
from .operator import DenseOperator, as_array

logger = get_logger(__name__)

Operand = Union[DenseOperator, np.ndarray]


class UnitaryLog(NamedTuple):
    generator: DenseOperator
    phase: float
    branch_ambiguous: bool


class _Tables(NamedTuple):
    signs: np.ndarray  # (-1)^{popcount(b & c)}
    phases: np.ndarray  # i^{popcount(a & b)}
    rows: np.ndarray  # c xor a, indexed [a, c]


@lru_cache(maxsize=None)
def _tables(n: int) -> _Tables:
    dim = 1 << n
    idx = np.arange(dim)
    popcount = np.array([bin(v).count("1") for v in range(dim)])
    overlap = popcount[idx[:, None] & idx[None, :]]
    signs = np.where(overlap % 2 == 0, 1.0, -1.0)
    phases = (1j ** (overlap % 4)).astype(complex)
    rows = idx[None, :] ^ idx[:, None]
    for table in (signs, phases, rows):
        table.setflags(write=False)
    return _Tables(signs, phases, rows)


def _check_cap(n: int) -> None:
    if n > settings.DENSE_MAX_QUBITS:
        raise DimensionError(
            f"{n} qubits exceed the dense cap of {settings.DENSE_MAX_QUBITS}"
        )


def to_dense(P: PauliPolynomial) -> DenseOperator:
    """Sum of coefficient times dense Pauli matrix."""
    n = P.n
    _check_cap(n)
    dim = 1 << n
    tables = _tables(n)
    cols = np.arange(dim)
    matrix = np.zeros((dim, dim), dtype=complex)
    if len(P) <= dim:
        for label, coefficient in P.terms.items():
            values = coefficient * tables.phases[label.a, label.b] * tables.signs[label.b]
            matrix[tables.rows[label.a], cols] += values
        return DenseOperator(matrix)

    coefficients = np.zeros((dim, dim), dtype=complex)
    for label, coefficient in P.terms.items():
        coefficients[label.a, label.b] = coefficient
    blocks = (coefficients * tables.phases) @ tables.signs
    matrix[tables.rows, cols[None, :]] = blocks
    return DenseOperator(matrix)


def pauli_label_matrix(label: PauliLabel) -> DenseOperator:
    return to_dense(PauliExpansion(label.n, {label: 1.0}))


def pauli_decompose(M: Operand) -> PauliExpansion:
    """Coefficients tr(P_x^dagger M) / 2^n."""
    matrix = as_array(M)
    dim = matrix.shape[0]
    n = dim.bit_length() - 1
    _check_cap(n)
    tables = _tables(n)
    cols = np.arange(dim)
    blocks = matrix[tables.rows, cols[None, :]]
    coefficients = (blocks @ tables.signs) * np.conj(tables.phases) / dim
    terms = {}
    for a, b in zip(*np.nonzero(np.abs(coefficients) >= settings.ZERO_COEFF_TOL)):
        terms[PauliLabel(n, int(a), int(b))] = complex(coefficients[a, b])
    return PauliExpansion(n, terms)


def _require_hermitian(matrix: np.ndarray) -> None:
    if np.max(np.abs(matrix - matrix.conj().T)) > settings.HERMITIAN_TOL:
        raise NotHermitianError("generator is not Hermitian within tolerance")


def _require_unitary(matrix: np.ndarray) -> None:
    gram = matrix.conj().T @ matrix
    if np.max(np.abs(gram - np.eye(matrix.shape[0]))) > settings.UNITARY_TOL:
        raise NotUnitaryError("operator is not unitary within tolerance")


def expm_i(H: Operand, t: float) -> DenseOperator:
    """e^{-iHt} for Hermitian H."""
    matrix = as_array(H)
    _require_hermitian(matrix)
    eigenvalues, vectors = scipy.linalg.eigh(matrix)
    return DenseOperator((vectors * np.exp(-1j * eigenvalues * t)) @ vectors.conj().T)


def unitary_distance(U: Operand, V: Operand) -> float:
    """min over phi of the normalized Frobenius distance between U and e^{i phi} V.

    The minimizing phase is arg tr(V^dagger U); the distance is then taken
    directly as ||U - e^{i phi} V||_F / sqrt(dim), which stays accurate near zero.
    """
    u, v = as_array(U), as_array(V)
    if u.shape != v.shape:
        raise DimensionError(f"operands have shapes {u.shape} and {v.shape}")
    _require_unitary(u)
    _require_unitary(v)
    phi = np.angle(np.trace(v.conj().T @ u))
    return float(np.linalg.norm(u - np.exp(1j * phi) * v) / np.sqrt(u.shape[0]))


def traceless_log(U: Operand) -> UnitaryLog:
    """Traceless Hermitian W and phase phi with e^{-iW} = e^{i phi} U.

    Eigenphases theta (U = sum e^{-i theta} Pi) lie in (-pi, pi]; W uses
    theta minus its mean.
    """
    matrix = as_array(U)
    _require_unitary(matrix)
    schur_form, vectors = scipy.linalg.schur(matrix, output="complex")
    eigenvalues = np.diag(schur_form)
    thetas = -np.angle(eigenvalues)
    thetas = np.where(thetas <= -np.pi, thetas + 2 * np.pi, thetas)
    ambiguous = bool(np.any(np.pi - np.abs(thetas) <= settings.BRANCH_TOL))
    if ambiguous:
        logger.warning("eigenphase within branch tolerance of pi; logarithm branch is ambiguous")
    mean = float(np.mean(thetas))
    generator = (vectors * (thetas - mean)) @ vectors.conj().T
    generator = 0.5 * (generator + generator.conj().T)
    return UnitaryLog(DenseOperator(generator), mean, ambiguous)


def operator_norm(M: Operand) -> float:
    matrix = as_array(M)
    if np.max(np.abs(matrix - matrix.conj().T), initial=0.0) <= settings.HERMITIAN_TOL:
        return float(np.max(np.abs(scipy.linalg.eigvalsh(matrix)), initial=0.0))
    return float(scipy.linalg.norm(matrix, 2))


def normalized_frobenius(M: Operand) -> float:
    matrix = as_array(M)
    return float(np.linalg.norm(matrix) / np.sqrt(matrix.shape[0]))


def random_unitary(n: int, seed: Optional[Union[int, np.random.Generator]] = None
                   ) -> DenseOperator:
    """Haar-random unitary."""
    _check_cap(n)
    return DenseOperator(unitary_group.rvs(1 << n, random_state=seed))


def random_hermitian(n: int, seed: Optional[Union[int, np.random.Generator]] = None,
                     scale: float = 1.0) -> DenseOperator:
    """Random Hermitian matrix rescaled to operator norm `scale`."""
    _check_cap(n)
    rng = np.random.default_rng(seed)
    dim = 1 << n
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    h = 0.5 * (g + g.conj().T)
    norm = float(np.max(np.abs(scipy.linalg.eigvalsh(h))))
    return DenseOperator(h * (scale / norm))
