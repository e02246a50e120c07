from dataclasses import dataclass
from typing import Union

import numpy as np

from ..config import settings
from ..errors import DimensionError


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """Immutable 2^n x 2^n complex matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex, copy=True)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionError(f"expected a square matrix, got shape {matrix.shape}")
        dim = matrix.shape[0]
        if dim < 2 or dim & (dim - 1):
            raise DimensionError(f"dimension {dim} is not a power of two")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def identity(cls, n: int) -> "DenseOperator":
        return cls(np.eye(1 << n, dtype=complex))

    @property
    def n(self) -> int:
        return self.matrix.shape[0].bit_length() - 1

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dagger(self) -> "DenseOperator":
        return DenseOperator(self.matrix.conj().T)

    def power(self, q: int) -> "DenseOperator":
        return DenseOperator(np.linalg.matrix_power(self.matrix, q))

    def is_unitary(self, tol: float | None = None) -> bool:
        tol = settings.UNITARY_TOL if tol is None else tol
        gram = self.matrix.conj().T @ self.matrix
        return bool(np.max(np.abs(gram - np.eye(self.dim))) <= tol)

    def is_hermitian(self, tol: float | None = None) -> bool:
        tol = settings.HERMITIAN_TOL if tol is None else tol
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T)) <= tol)

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        if not isinstance(other, DenseOperator):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionError(f"operands act on {self.n} and {other.n} qubits")
        return DenseOperator(self.matrix @ other.matrix)

    def __add__(self, other: "DenseOperator") -> "DenseOperator":
        return DenseOperator(self.matrix + other.matrix)

    def __sub__(self, other: "DenseOperator") -> "DenseOperator":
        return DenseOperator(self.matrix - other.matrix)

    def __mul__(self, factor: Union[int, float, complex]) -> "DenseOperator":
        return DenseOperator(factor * self.matrix)

    __rmul__ = __mul__


def as_array(op: Union[DenseOperator, np.ndarray]) -> np.ndarray:
    return op.matrix if isinstance(op, DenseOperator) else np.asarray(op, dtype=complex)
