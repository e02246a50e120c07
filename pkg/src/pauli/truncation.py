"""
Sparse bounded truncation T_{k,c}: the nearest (in coefficient l-infinity
distance) operator with at most k Pauli terms and operator norm at most c.
"""

from ..dense.backend import operator_norm, to_dense
from ..errors import InvalidInstanceError
from ..utils.logging import get_logger
from .polynomial import SparseHamiltonian

logger = get_logger(__name__)


def top_k(H: SparseHamiltonian, k: int) -> SparseHamiltonian:
    """Keep the k largest |coefficients|; ties broken by label string."""
    ranked = sorted(H.terms.items(), key=lambda item: (-abs(item[1]), str(item[0])))
    return SparseHamiltonian(H.n, dict(ranked[:max(k, 0)]))


def truncate_sparse_bounded(H: SparseHamiltonian, k: int, c: float) -> SparseHamiltonian:
    """T_{k,c}(H).

    Exact when the top-k restriction already satisfies the norm bound; otherwise
    the kept coefficients are scaled uniformly onto the norm ball.
    """
    if k < 0:
        raise InvalidInstanceError(f"k must be non-negative, got {k}")
    if c <= 0:
        raise InvalidInstanceError(f"c must be positive, got {c}")
    if k == 0:
        return SparseHamiltonian.zero(H.n)

    kept = top_k(H, k)
    # l1 of the coefficients bounds the operator norm
    if kept.l1_norm() <= c:
        return kept
    norm = operator_norm(to_dense(kept))
    if norm <= c:
        return kept
    logger.debug(f"truncation norm constraint active: {norm:.6g} > {c:.6g}")
    scaled = kept.scale(c / norm)
    if operator_norm(to_dense(scaled)) > c:
        scaled = scaled.scale(1.0 - 1e-12)
    return scaled
