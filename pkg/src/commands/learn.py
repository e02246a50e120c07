import sys
from typing import Optional

from ..learner.contracts import LearnReport
from ..learner.orchestrator import main_learn
from ..learner.params import regime_params
from ..oracle.oracle import EvolutionOracle
from ..oracle.privileged import true_error
from ..pauli.generator import random_sparse_hamiltonian
from ..pauli.io import load_hamiltonian
from ..pauli.polynomial import SparseHamiltonian
from ..utils.context import set_run_id
from ..utils.logging import get_logger
from .contracts import RunConfig

logger = get_logger(__name__)


def load_instance(config: RunConfig) -> SparseHamiltonian:
    """The hidden Hamiltonian: from --in, or generated from (n, m, seed)."""
    if config.input is not None:
        return load_hamiltonian(config.input)
    return random_sparse_hamiltonian(config.n, config.m, seed=config.seed)


def run_learning(config: RunConfig, H: SparseHamiltonian, epsilon: float,
                 seed: Optional[int]) -> LearnReport:
    """One main-loop run on a fresh oracle, with true errors from the harness."""
    oracle = EvolutionOracle.create(H, config.T)
    params = regime_params(config.m, H.n, config.T, config.K, config.regime, config.rho)
    _, report = main_learn(
        oracle, config.m, epsilon, params, config.delta, seed=seed, mode=config.mode,
        observer=lambda j, estimate: true_error(oracle, estimate),
        force_sql=config.force_sql,
    )
    return report


def cmd_learn(config: RunConfig) -> int:
    """Exit 0 iff the final error is within epsilon and t_min equals T."""
    set_run_id(f"learn-{config.seed}")
    H = load_instance(config)
    report = run_learning(config, H, config.epsilon, config.seed)

    text = report.to_json() + "\n"
    if config.output is None:
        sys.stdout.write(text)
    else:
        config.output.write_text(text)
        logger.info(f"report written to {config.output}")

    if report.success:
        logger.info(f"learned to {report.final_error:.3g} <= {config.epsilon:.3g}")
        return 0
    logger.error(
        f"learning failed: final error {report.final_error!r}, "
        f"t_min {report.ledger.t_min!r} (T={config.T!r})"
    )
    return 1
