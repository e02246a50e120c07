import math
import threading

import numpy as np
import scipy.linalg

from ..dense.backend import expm_i, operator_norm, to_dense
from ..dense.operator import DenseOperator
from ..errors import InvalidInstanceError, MinimumTimeViolation
from ..observability.metrics import MIN_TIME_VIOLATIONS_TOTAL, record_query
from ..pauli.polynomial import SparseHamiltonian
from ..utils.logging import get_logger
from .contracts import OracleConfig, QueryLedger

logger = get_logger(__name__)

# slack on the promise ||H|| <= 1 for rescaled instances
_NORM_SLACK = 1e-9


class EvolutionOracle:
    """
    Black-box access to e^{-iHt} for t >= T.

    Every granted evolution is charged to the ledger; evolutions under
    Hamiltonians the caller already knows are free.
    """

    def __init__(self, config: OracleConfig):
        hamiltonian = config.hamiltonian
        dense = to_dense(hamiltonian)
        norm = operator_norm(dense)
        if norm > 1.0 + _NORM_SLACK:
            raise InvalidInstanceError(f"hidden Hamiltonian has operator norm {norm:.6g} > 1")
        self.__hamiltonian = hamiltonian
        self.__eigenvalues, self.__vectors = scipy.linalg.eigh(dense.matrix)
        self._T = config.T
        self._n = hamiltonian.n
        self._lock = threading.Lock()
        self._t_tot = 0.0
        self._t_min = math.inf
        self._queries = 0
        logger.info(f"oracle ready: n={self._n}, T={self._T}")

    @classmethod
    def create(cls, hamiltonian: SparseHamiltonian, T: float) -> "EvolutionOracle":
        return cls(OracleConfig(hamiltonian=hamiltonian, T=T))

    @property
    def T(self) -> float:
        return self._T

    @property
    def n(self) -> int:
        return self._n

    def _evolve(self, t: float) -> np.ndarray:
        v = self.__vectors
        return (v * np.exp(-1j * self.__eigenvalues * t)) @ v.conj().T

    def _charge(self, t: float, count: int, kind: str) -> None:
        if not t >= self._T:
            MIN_TIME_VIOLATIONS_TOTAL.inc()
            logger.warning(f"refused evolution of {t!r} below minimum time {self._T!r}")
            raise MinimumTimeViolation(t, self._T)
        if count < 1:
            raise InvalidInstanceError(f"query count must be positive, got {count}")
        with self._lock:
            self._t_tot += t * count
            self._t_min = min(self._t_min, t)
            self._queries += count
        record_query(kind, count, t * count)

    def query_evolution(self, t: float, copies: int = 1, kind: str = "evolution"
                        ) -> DenseOperator:
        """e^{-iHt}; charges `copies` queries of duration t."""
        self._charge(t, copies, kind)
        return DenseOperator(self._evolve(t))

    def correction_adjoint_power(self, H_j: SparseHamiltonian, q: int, copies: int = 1
                                 ) -> DenseOperator:
        """(e^{iH_jT} e^{-iHT})^q; charges q queries of duration T per copy."""
        if not isinstance(q, (int, np.integer)) or isinstance(q, bool) or q < 1:
            raise InvalidInstanceError(f"q must be a positive integer, got {q!r}")
        if H_j.n != self._n:
            raise InvalidInstanceError(f"H_j acts on {H_j.n} qubits, oracle on {self._n}")
        self._charge(self._T, int(q) * copies, "correction")
        known = expm_i(to_dense(H_j), -self._T).matrix
        step = known @ self._evolve(self._T)
        return DenseOperator(np.linalg.matrix_power(step, int(q)))

    def ledger(self) -> QueryLedger:
        with self._lock:
            return QueryLedger(t_tot=self._t_tot, t_min=self._t_min, queries=self._queries)

