"""
Sparse Pauli polynomials.

`SparseHamiltonian` holds real coefficients on non-identity labels (a traceless
Hermitian operator under the i^{a.b} X^a Z^b convention); `PauliExpansion`
holds arbitrary complex coefficients and is the result type of products and
commutators. Both are immutable.
"""

from collections import defaultdict
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Union

import numpy as np

from ..config import settings
from ..errors import DimensionError, InvalidInstanceError, NotHermitianError
from .labels import PHASES, PauliLabel, mul_exponent

Number = Union[int, float, complex]


class CoefficientNorms(NamedTuple):
    l1: float
    l2: float
    linf: float


class PauliPolynomial:
    """Common storage and algebra of the two coefficient flavours."""

    __slots__ = ("_n", "_terms")

    def __init__(self, n: int, terms: Optional[Mapping[PauliLabel, Number]] = None):
        if n < 1:
            raise InvalidInstanceError(f"qubit count must be positive, got {n}")
        self._n = n
        cleaned: dict[PauliLabel, Number] = {}
        tol = settings.ZERO_COEFF_TOL
        for label, coefficient in (terms or {}).items():
            if label.n != n:
                raise DimensionError(f"label {label} acts on {label.n} qubits, expected {n}")
            value = self._coerce(label, coefficient)
            if abs(value) >= tol:
                cleaned[label] = value
        self._terms = MappingProxyType(cleaned)

    def _coerce(self, label: PauliLabel, coefficient: Number) -> Number:
        return complex(coefficient)

    # --- Accessors ---

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[PauliLabel, Number]:
        return self._terms

    @property
    def support(self) -> frozenset[PauliLabel]:
        return frozenset(self._terms)

    @property
    def sparsity(self) -> int:
        return len(self._terms)

    def coefficient(self, label: PauliLabel) -> Number:
        return self._terms.get(label, 0.0)

    def items(self) -> Iterator[tuple[PauliLabel, Number]]:
        """Terms in deterministic (string) order."""
        for label in sorted(self._terms, key=str):
            yield label, self._terms[label]

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[PauliLabel]:
        return iter(self._terms)

    # --- Norms ---

    def l1_norm(self) -> float:
        return float(sum(abs(c) for c in self._terms.values()))

    def l2_norm(self) -> float:
        return float(np.sqrt(sum(abs(c) ** 2 for c in self._terms.values())))

    def linf_norm(self) -> float:
        return float(max((abs(c) for c in self._terms.values()), default=0.0))

    # --- Algebra ---

    def _check_n(self, other: "PauliPolynomial") -> None:
        if other.n != self._n:
            raise DimensionError(f"operands act on {self._n} and {other.n} qubits")

    def _linear(self, other: "PauliPolynomial", sign: float) -> "PauliPolynomial":
        self._check_n(other)
        out: dict[PauliLabel, Number] = dict(self._terms)
        for label, coefficient in other.terms.items():
            out[label] = out.get(label, 0.0) + sign * coefficient
        if isinstance(self, SparseHamiltonian) and isinstance(other, SparseHamiltonian):
            return SparseHamiltonian(self._n, out)
        return PauliExpansion(self._n, out)

    def __add__(self, other: "PauliPolynomial") -> "PauliPolynomial":
        return self._linear(other, 1.0)

    def __sub__(self, other: "PauliPolynomial") -> "PauliPolynomial":
        return self._linear(other, -1.0)

    def __neg__(self) -> "PauliPolynomial":
        return self.scale(-1.0)

    def scale(self, factor: Number) -> "PauliPolynomial":
        terms = {label: factor * c for label, c in self._terms.items()}
        if isinstance(self, SparseHamiltonian) and not isinstance(factor, complex):
            return SparseHamiltonian(self._n, terms)
        return PauliExpansion(self._n, terms)

    def __mul__(self, factor: Number) -> "PauliPolynomial":
        if isinstance(factor, PauliPolynomial):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def __matmul__(self, other: "PauliPolynomial") -> "PauliExpansion":
        return self.multiply(other)

    def multiply(self, other: "PauliPolynomial") -> "PauliExpansion":
        """Operator product, by pairwise Pauli multiplication."""
        self._check_n(other)
        out: dict[tuple[int, int], complex] = defaultdict(complex)
        for x, cx in self._terms.items():
            for y, cy in other.terms.items():
                e = mul_exponent((x.a, x.b), (y.a, y.b))
                out[(x.a ^ y.a, x.b ^ y.b)] += PHASES[e] * cx * cy
        return PauliExpansion(
            self._n, {PauliLabel(self._n, a, b): c for (a, b), c in out.items()}
        )

    def commutator(self, other: "PauliPolynomial") -> "PauliExpansion":
        """[self, other]; only anticommuting label pairs contribute (2 P_x P_y)."""
        self._check_n(other)
        out: dict[tuple[int, int], complex] = defaultdict(complex)
        for x, cx in self._terms.items():
            for y, cy in other.terms.items():
                if ((x.a & y.b).bit_count() + (x.b & y.a).bit_count()) % 2 == 0:
                    continue
                e = mul_exponent((x.a, x.b), (y.a, y.b))
                out[(x.a ^ y.a, x.b ^ y.b)] += 2 * PHASES[e] * cx * cy
        return PauliExpansion(
            self._n, {PauliLabel(self._n, a, b): c for (a, b), c in out.items()}
        )

    def power(self, k: int) -> "PauliExpansion":
        if k < 0:
            raise InvalidInstanceError(f"power must be non-negative, got {k}")
        result = PauliExpansion(self._n, {PauliLabel.identity(self._n): 1.0})
        for _ in range(k):
            result = result.multiply(self)
        return result

    def restrict(self, labels: Iterable[PauliLabel]) -> "PauliPolynomial":
        keep = set(labels)
        return type(self)(self._n, {x: c for x, c in self._terms.items() if x in keep})

    def allclose(self, other: "PauliPolynomial", atol: float = 1e-12) -> bool:
        self._check_n(other)
        labels = set(self._terms) | set(other.terms)
        return all(abs(self.coefficient(x) - other.coefficient(x)) <= atol for x in labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliPolynomial):
            return NotImplemented
        return self._n == other.n and dict(self._terms) == dict(other.terms)

    def __hash__(self):
        return hash((self._n, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        body = " + ".join(f"{c!r}*{label}" for label, c in self.items()) or "0"
        return f"{type(self).__name__}(n={self._n}, {body})"


class SparseHamiltonian(PauliPolynomial):
    """Real-coefficient, traceless Pauli polynomial."""

    __slots__ = ()

    def _coerce(self, label: PauliLabel, coefficient: Number) -> float:
        value = complex(coefficient)
        if abs(value.imag) > settings.HERMITIAN_TOL:
            raise NotHermitianError(f"coefficient {coefficient!r} of {label} is not real")
        if label.is_identity and abs(value.real) >= settings.ZERO_COEFF_TOL:
            raise InvalidInstanceError("identity term is not allowed in a traceless Hamiltonian")
        return float(value.real)

    @classmethod
    def zero(cls, n: int) -> "SparseHamiltonian":
        return cls(n, {})

    def to_expansion(self) -> "PauliExpansion":
        return PauliExpansion(self._n, dict(self._terms))


class PauliExpansion(PauliPolynomial):
    """Complex-coefficient Pauli polynomial, e.g. the Pauli coefficients U_x of a unitary."""

    __slots__ = ()

    def dagger(self) -> "PauliExpansion":
        return PauliExpansion(self._n, {x: np.conj(c) for x, c in self._terms.items()})

    def squared_norm(self) -> float:
        return float(sum(abs(c) ** 2 for c in self._terms.values()))

    def to_hamiltonian(self, atol: Optional[float] = None, drop_identity: bool = True
                       ) -> SparseHamiltonian:
        """Hermitian traceless part; raises if any coefficient is not real within atol."""
        atol = settings.HERMITIAN_TOL if atol is None else atol
        terms: dict[PauliLabel, float] = {}
        for label, c in self._terms.items():
            if abs(complex(c).imag) > atol:
                raise NotHermitianError(f"coefficient {c!r} of {label} is not real")
            if label.is_identity and drop_identity:
                continue
            terms[label] = complex(c).real
        return SparseHamiltonian(self._n, terms)


def coefficient_norms(H: PauliPolynomial) -> CoefficientNorms:
    """(l1, l2, linf) of the Pauli coefficients; l2 equals the normalized Frobenius norm."""
    return CoefficientNorms(H.l1_norm(), H.l2_norm(), H.linf_norm())


def quasi_sparsity(H: PauliPolynomial, epsilon: float) -> int:
    """Smallest sparsity of an operator within normalized-Frobenius distance epsilon of H.

    Dropping the smallest coefficients first is optimal, so the answer is exact.
    """
    if epsilon < 0:
        raise InvalidInstanceError("epsilon must be non-negative")
    magnitudes = sorted(abs(c) for c in H.terms.values())
    budget = epsilon**2 * (1 + 1e-12)
    dropped = 0.0
    removed = 0
    for value in magnitudes:
        if dropped + value**2 > budget:
            break
        dropped += value**2
        removed += 1
    return len(magnitudes) - removed
