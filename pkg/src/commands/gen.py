import json
import sys

from ..pauli.generator import random_sparse_hamiltonian
from ..pauli.io import dump_hamiltonian, format_hamiltonian
from ..pauli.polynomial import coefficient_norms
from ..utils.logging import get_logger
from .contracts import RunConfig

logger = get_logger(__name__)


def cmd_gen(config: RunConfig) -> int:
    """Write a seeded random m-sparse instance and print its sparsity and norms."""
    H = random_sparse_hamiltonian(config.n, config.m, seed=config.seed)
    norms = coefficient_norms(H)
    summary = {
        "n": H.n,
        "sparsity": H.sparsity,
        "l1": norms.l1,
        "l2": norms.l2,
        "linf": norms.linf,
    }
    if config.output is None:
        sys.stdout.write(format_hamiltonian(H))
        logger.info(f"generated instance: {json.dumps(summary, sort_keys=True)}")
    else:
        dump_hamiltonian(H, config.output)
        logger.info(f"wrote {H.sparsity} terms to {config.output}")
        print(json.dumps(summary, sort_keys=True))
    return 0
