"""
F2 span of Pauli labels (ignoring phases).
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from ..errors import DimensionError
from .labels import PauliLabel


@dataclass(frozen=True)
class SpanBasis:
    n: int
    # echelon basis over F2^{2n} (distinct leading bits), encoded as label indices
    vectors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.vectors)

    @property
    def size(self) -> int:
        return 1 << self.rank

    def contains(self, label: PauliLabel) -> bool:
        if label.n != self.n:
            raise DimensionError(f"label acts on {label.n} qubits, span on {self.n}")
        return _reduce(label.index, self.vectors) == 0

    def enumerate(self) -> Iterator[PauliLabel]:
        """All 2^rank members, identity first."""
        for mask in range(self.size):
            v = 0
            for i, basis_vector in enumerate(self.vectors):
                if (mask >> i) & 1:
                    v ^= basis_vector
            yield PauliLabel.from_index(self.n, v)


def _reduce(v: int, basis: Iterable[int]) -> int:
    for b in basis:
        v = min(v, v ^ b)
    return v


def f2_span(labels: Iterable[PauliLabel], n: Optional[int] = None) -> SpanBasis:
    """Basis of span_F2{(a, b)} by xor Gaussian elimination."""
    labels = list(labels)
    if n is None:
        if not labels:
            raise DimensionError("qubit count is required for an empty label set")
        n = labels[0].n
    basis: list[int] = []
    for label in labels:
        if label.n != n:
            raise DimensionError(f"label {label} acts on {label.n} qubits, expected {n}")
        v = _reduce(label.index, basis)
        if v:
            basis.append(v)
            # keep vectors sorted by leading bit so min-reduction stays valid
            basis.sort(reverse=True)
    return SpanBasis(n, tuple(basis))
