"""
Error-halving main loop.

Iteration j starts from H_j with ||H - H_j||_linf <= eta_j = 2^-j and learns
the difference to eta_j/4, either through the long-time emulation of the
residual (Heisenberg branch, eta_j <= eta_sw) or directly at the standard
quantum limit. H_{j+1} = T_{m,1}(H_j + dH_j) then satisfies
||H - H_{j+1}||_linf <= eta_j / 2.
"""

import math
from typing import Callable, Optional, Union

import numpy as np

from ..config import settings
from ..control.emulation import IntegerEvolutionAccess, integer_evol_learn, residual_unitary
from ..dense.operator import DenseOperator
from ..errors import InvalidInstanceError, RegimeError
from ..observability.metrics import LEARN_ITERATIONS_TOTAL
from ..observability.otel import get_tracer
from ..oracle.oracle import EvolutionOracle
from ..pauli.polynomial import SparseHamiltonian
from ..pauli.truncation import truncate_sparse_bounded
from ..tomography.contracts import EXACT, AccessMode
from ..utils.logging import get_logger
from .contracts import IterationRecord, LearnReport, RegimeParams
from .params import predicted_total_time, regime_params
from .sparse_ham import ResidualProvider, sparse_ham_copies, sparse_ham_learn
from .sql import sql_copies, sql_learn

logger = get_logger(__name__)
tracer = get_tracer(__name__)

Seed = Optional[Union[int, np.random.Generator]]

# (j, H_{j+1}) -> ||H - H_{j+1}||_linf, supplied by a harness that can see H
Observer = Callable[[int, SparseHamiltonian], float]


def iteration_schedule(m: int, j: int) -> tuple[float, float, int]:
    """(eta_j, t_j, N_j) = (2^-j, 1/(32 m eta_j), ceil(1/(2 sqrt(m) eta_j)))."""
    eta = 2.0**-j
    return eta, 1.0 / (32 * m * eta), math.ceil(1.0 / (2 * math.sqrt(m) * eta))


def iteration_count(epsilon: float) -> int:
    return max(0, math.ceil(math.log2(1.0 / epsilon)))


def _residual_provider(oracle: EvolutionOracle, H_j: SparseHamiltonian,
                       W_j: SparseHamiltonian, N_j: int) -> ResidualProvider:
    def provider(t: float, copies: int) -> DenseOperator:
        return residual_unitary(oracle, H_j, W_j, t, N_j, copies)
    return provider


class HamiltonianLearner:
    """
    Runs the main loop against one oracle. The learner never sees the hidden
    Hamiltonian; true errors come only from the optional observer.
    """

    def __init__(self, oracle: EvolutionOracle, m: int, params: RegimeParams,
                 mode: AccessMode = EXACT, observer: Optional[Observer] = None,
                 force_sql: bool = False):
        if params.n != oracle.n:
            raise InvalidInstanceError(f"parameters are for n={params.n}, oracle has n={oracle.n}")
        if params.m != m:
            raise InvalidInstanceError(f"parameters are for m={params.m}, got m={m}")
        if not math.isclose(params.T, oracle.T, rel_tol=1e-12):
            raise InvalidInstanceError(f"parameters use T={params.T}, oracle enforces T={oracle.T}")
        if params.regime == "poly_sparse" and (params.K > 3 or m > 4):
            raise RegimeError("poly_sparse runs are limited to K <= 3 and m <= 4")
        self.oracle = oracle
        self.m = m
        self.params = params
        self.mode = mode
        self.observer = observer
        self.force_sql = force_sql

    def _heisenberg_step(self, H_j: SparseHamiltonian, eta: float, N_j: int, delta: float,
                         rng: np.random.Generator) -> tuple[SparseHamiltonian, int, int]:
        p = self.params
        # 1. Correction generator from integer powers of C_j^dagger
        access = IntegerEvolutionAccess.from_oracle(self.oracle, H_j)
        learned = integer_evol_learn(
            access, p.s, p.c_F, p.c_inf, p.c, eta, delta,
            seed=rng, mode=self.mode, relaxation=p.relaxation,
        )
        # 2. Residual e^{-i(H - H_j) t_j} from long queries and the learned correction
        provider = _residual_provider(self.oracle, H_j, learned.estimate, N_j)
        update = sparse_ham_learn(
            provider, self.m, eta, delta, seed=rng, mode=self.mode, relaxation=p.relaxation
        )
        copies = learned.copies + sparse_ham_copies(self.m, eta, delta, p.relaxation)
        return update, learned.t, copies

    def run(self, epsilon: float, delta: float, seed: Seed = None
            ) -> tuple[SparseHamiltonian, LearnReport]:
        if not 0 < delta < 1:
            raise InvalidInstanceError(f"delta must lie in (0, 1), got {delta}")
        if epsilon <= 0:
            raise InvalidInstanceError(f"epsilon must be positive, got {epsilon}")
        p = self.params
        J = iteration_count(epsilon)
        # union bound over two learned objects per iteration
        delta_object = delta / (2 * J) if J else delta
        rng = np.random.default_rng(seed)

        H_j = SparseHamiltonian.zero(self.oracle.n)
        records: list[IterationRecord] = []
        logger.info(
            f"main loop: m={self.m}, eps={epsilon:.6g}, J={J}, eta_sw={p.eta_sw:.6g}, "
            f"mode={self.mode.label}"
        )
        for j in range(J):
            eta, t_j, N_j = iteration_schedule(self.m, j)
            before = self.oracle.ledger()
            heisenberg = eta <= p.eta_sw and not self.force_sql
            branch = "heisenberg" if heisenberg else "sql"
            with tracer.start_as_current_span("learn.iteration") as span:
                span.set_attribute("j", j)
                span.set_attribute("eta", eta)
                span.set_attribute("branch", branch)
                if heisenberg:
                    update, integer_time, copies = self._heisenberg_step(
                        H_j, eta, N_j, delta_object, rng
                    )
                else:
                    update = sql_learn(
                        self.oracle, H_j, self.m, eta, p, delta_object, seed=rng, mode=self.mode
                    )
                    integer_time = None
                    copies = 2 * sql_copies(self.m, eta, p, delta_object)

                H_next = truncate_sparse_bounded(H_j + update, self.m, 1.0)

            if settings.METRICS_ENABLED:
                LEARN_ITERATIONS_TOTAL.labels(branch=branch).inc()
            spent = self.oracle.ledger().delta(before)
            error = self.observer(j, H_next) if self.observer else None
            records.append(IterationRecord(
                j=j,
                eta=eta,
                t_j=t_j,
                N_j=N_j,
                branch=branch,
                integer_time=integer_time,
                copies=copies,
                true_error=error,
                t_tot_delta=spent.t_tot,
                queries_delta=spent.queries,
            ))
            logger.info(
                f"iteration {j}: branch={branch}, eta={eta:.6g}, "
                f"t_tot+={spent.t_tot:.6g}"
                + (f", true error {error:.3g}" if error is not None else ""),
                extra={"iteration": j, "branch": branch},
            )
            H_j = H_next

        if records:
            final_error = records[-1].true_error
        else:
            final_error = self.observer(0, H_j) if self.observer else None

        literal = regime_params(self.m, p.n, p.T, p.K, p.regime, 1.0)
        report = LearnReport(
            params={"literal": literal, "relaxed": p},
            epsilon=epsilon,
            delta=delta,
            seed=seed if isinstance(seed, int) else None,
            mode=self.mode.label,
            J=J,
            iterations=records,
            estimate=H_j,
            final_error=final_error,
            ledger=self.oracle.ledger(),
            predicted_total_time=predicted_total_time(p, epsilon),
            sparsity_matches=H_j.sparsity == self.m,
        )
        return H_j, report


def main_learn(oracle: EvolutionOracle, m: int, epsilon: float, params: RegimeParams,
               delta: float, seed: Seed = None, mode: AccessMode = EXACT,
               observer: Optional[Observer] = None, force_sql: bool = False
               ) -> tuple[SparseHamiltonian, LearnReport]:
    """H~ with ||H - H~||_linf <= eps w.p. 1 - delta, querying only durations >= T.

    force_sql runs every iteration on the standard-quantum-limit branch.
    """
    learner = HamiltonianLearner(oracle, m, params, mode=mode, observer=observer,
                                 force_sql=force_sql)
    return learner.run(epsilon, delta, seed=seed)
