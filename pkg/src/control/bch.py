"""
Baker-Campbell-Hausdorff series in Dynkin form over the sparse Pauli algebra.

log(e^X e^Y) = sum_r BCH_r(X, Y), where BCH_r is a rational combination of
nested commutators [Z_1, [Z_2, ... [Z_{r-1}, Z_r]]] with letters Z_i in {X, Y}.
Commutators are built once per word and shared across degrees.
"""

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from pydantic import BaseModel, ConfigDict

from ..config import settings
from ..dense.backend import operator_norm, to_dense
from ..errors import InvalidInstanceError, RegimeError
from ..pauli.polynomial import PauliExpansion, PauliPolynomial, SparseHamiltonian
from ..utils.logging import get_logger

logger = get_logger(__name__)


class BchTruncation(BaseModel):
    """
    Degree-k truncation W^{(k)} of the correction generator with its certified
    normalized-Frobenius tail bound.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    generator: SparseHamiltonian
    degree: int
    tail_bound: float
    ratio: float  # 4 T e C
    constant: float  # C
    sparsity_bound: int  # k (2m)^k


def bch_constant(r: int) -> float:
    """C_r = 2^{2r-1} r^r / r!."""
    return 2 ** (2 * r - 1) * r**r / math.factorial(r)


def _blocks(total: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Sequences of (r_i, s_i) with r_i + s_i >= 1 summing to `total`."""
    if total == 0:
        yield ()
        return
    for size in range(1, total + 1):
        for r_i in range(size + 1):
            for rest in _blocks(total - size):
                yield ((r_i, size - r_i),) + rest


@lru_cache(maxsize=None)
def dynkin_coefficients(r: int) -> dict[str, Fraction]:
    """Word -> rational coefficient of its nested commutator in BCH_r.

    Words whose last two letters coincide give a vanishing commutator and are
    dropped.
    """
    coefficients: dict[str, Fraction] = {}
    for blocks in _blocks(r):
        n = len(blocks)
        denominator = r * n
        for r_i, s_i in blocks:
            denominator *= math.factorial(r_i) * math.factorial(s_i)
        word = "".join("X" * r_i + "Y" * s_i for r_i, s_i in blocks)
        if len(word) >= 2 and word[-1] == word[-2]:
            continue
        coefficients[word] = coefficients.get(word, Fraction(0)) + Fraction(
            (-1) ** (n - 1), denominator
        )
    return {word: c for word, c in coefficients.items() if c != 0}


class _CommutatorCache:
    def __init__(self, X: PauliPolynomial, Y: PauliPolynomial):
        self._letters = {"X": X.to_expansion() if isinstance(X, SparseHamiltonian) else X,
                         "Y": Y.to_expansion() if isinstance(Y, SparseHamiltonian) else Y}
        self._memo: dict[str, PauliPolynomial] = dict(self._letters)

    def nested(self, word: str) -> PauliPolynomial:
        if word not in self._memo:
            self._memo[word] = self._letters[word[0]].commutator(self.nested(word[1:]))
        return self._memo[word]


def _check_degree(r: int) -> None:
    if not 1 <= r <= settings.BCH_MAX_DEGREE:
        raise InvalidInstanceError(
            f"BCH degree must lie in [1, {settings.BCH_MAX_DEGREE}], got {r}"
        )


def _term(cache: _CommutatorCache, n: int, r: int) -> PauliExpansion:
    total: PauliPolynomial = PauliExpansion(n, {})
    for word, coefficient in dynkin_coefficients(r).items():
        total = total + cache.nested(word).scale(float(coefficient))
    return PauliExpansion(n, dict(total.terms))


def bch_term(X: PauliPolynomial, Y: PauliPolynomial, r: int) -> PauliExpansion:
    """Homogeneous degree-r part BCH_r(X, Y)."""
    _check_degree(r)
    if X.n != Y.n:
        raise InvalidInstanceError(f"operands act on {X.n} and {Y.n} qubits")
    return _term(_CommutatorCache(X, Y), X.n, r)


def bch_series(X: PauliPolynomial, Y: PauliPolynomial, k: int) -> list[PauliExpansion]:
    """[BCH_1, ..., BCH_k] sharing one commutator cache."""
    _check_degree(k)
    cache = _CommutatorCache(X, Y)
    return [_term(cache, X.n, r) for r in range(1, k + 1)]


def bch_truncated_generator(H: SparseHamiltonian, H_j: SparseHamiltonian, T: float, k: int
                            ) -> BchTruncation:
    """W^{(k)} = -i sum_{r<=k} BCH_r(iHT, -iH_jT), so e^{iW} approximates e^{iHT} e^{-iH_jT}.

    The tail bound is sum_{r>k} (4TeC)^r sqrt(m) eps with C = max(1, ||H||, ||H_j||),
    eps = ||H - H_j||_linf and m = supp_P(H - H_j).
    """
    constant = max(1.0, operator_norm(to_dense(H)), operator_norm(to_dense(H_j)))
    ratio = 4 * T * math.e * constant
    if ratio >= 1:
        raise RegimeError(f"BCH convergence needs 4TeC < 1, got {ratio:.6g}")

    X = H.to_expansion().scale(1j * T)
    Y = H_j.to_expansion().scale(-1j * T)
    log_sum = PauliExpansion(H.n, {})
    for term in bch_series(X, Y, k):
        log_sum = PauliExpansion(H.n, dict((log_sum + term).terms))
    generator = PauliExpansion(H.n, dict(log_sum.scale(-1j).terms)).to_hamiltonian(atol=1e-10)

    difference = H - H_j
    tail = ratio ** (k + 1) / (1 - ratio) * math.sqrt(difference.sparsity) * difference.linf_norm()
    m = max(H.sparsity, H_j.sparsity)
    logger.debug(f"BCH truncation k={k}: ratio {ratio:.3g}, tail bound {tail:.3g}")
    return BchTruncation(
        generator=generator,
        degree=k,
        tail_bound=tail,
        ratio=ratio,
        constant=constant,
        sparsity_bound=k * (2 * m) ** k,
    )
