"""
Two-stage sparse pure-state tomography: heavy hitters find the support, then
restricted tomography estimates the amplitudes on it. Failure budget is split
delta/3 per stage.
"""

from typing import Literal, Optional, Union

import numpy as np

from ..errors import InvalidInstanceError
from ..observability.metrics import TOMOGRAPHY_COPIES_TOTAL
from ..pauli.labels import PauliLabel
from ..pauli.polynomial import PauliExpansion
from ..utils.logging import get_logger
from .budget import (
    l2_copies,
    l2_support_bound,
    l2_thresholds,
    linf_copies,
    linf_support_bound,
    linf_thresholds,
    restricted_shots,
)
from .contracts import TomographyResult
from .sampling import StateAccess, rank_heavy_hitters, restricted_tomography

logger = get_logger(__name__)

Seed = Optional[Union[int, np.random.Generator]]


def _top_labels(n: int, magnitudes: np.ndarray, count: int, force_identity: bool
                ) -> list[PauliLabel]:
    order = np.lexsort((np.arange(magnitudes.size), -magnitudes))
    if force_identity:
        chosen = [0] + [int(i) for i in order if i != 0][:count - 1]
    else:
        chosen = [int(i) for i in order[:count]]
    return [PauliLabel.from_index(n, i) for i in chosen if i == 0 or magnitudes[i] > 0]


def _sparse_tomography(access: StateAccess, s: int, epsilon: float, delta: float, seed: Seed,
                       norm: Literal["linf", "l2"], phase_correct: bool, relaxation: float
                       ) -> TomographyResult:
    if s < 1:
        raise InvalidInstanceError(f"sparsity must be positive, got {s}")
    if not 0 < epsilon < 1 or not 0 < delta < 1:
        raise InvalidInstanceError("epsilon and delta must lie in (0, 1)")
    if norm == "linf":
        threshold, accuracy = linf_thresholds(epsilon)
        bound = linf_support_bound(s)
        copies = linf_copies(s, epsilon, delta, relaxation)
    else:
        threshold, accuracy = l2_thresholds(s, epsilon)
        bound = l2_support_bound(s)
        copies = l2_copies(s, epsilon, delta, relaxation)
    threshold = min(threshold, 0.999)
    rng = np.random.default_rng(seed)
    identity = PauliLabel.identity(access.n)

    # 1. Support: best (s+1)-term support in exact mode, heavy hitters otherwise
    if access.mode.kind == "exact":
        amplitudes = access.read_exact(rng)
        support = _top_labels(access.n, np.abs(amplitudes), s + 1, phase_correct)
        estimates = {label: complex(amplitudes[label.index]) for label in support}
        TOMOGRAPHY_COPIES_TOTAL.labels(routine=f"sparse_{norm}").inc(copies)
    else:
        ranked, _ = rank_heavy_hitters(access, threshold, delta / 3, rng, relaxation)
        if phase_correct:
            ranked[identity] = np.inf
        elif not ranked:
            ranked[identity] = 0.0
        ordered = sorted(ranked, key=lambda label: (-ranked[label], label.index))
        if len(ordered) > bound:
            logger.debug(f"heavy hitters returned {len(ordered)} labels, keeping {bound}")
        support = ordered[:bound]
        reference = support[0]

        # 2. Restricted tomography against the reference label
        estimates = restricted_tomography(
            access, support, accuracy, delta / 3, seed=rng, reference=reference,
            shots=restricted_shots(bound, accuracy, delta / 3, relaxation),
        )

    # 3. Phase correction by the identity amplitude
    if phase_correct:
        anchor = np.conj(estimates[identity])
        estimates = {label: anchor * value for label, value in estimates.items()}

    coefficients = PauliExpansion(access.n, estimates)
    return TomographyResult(
        coefficients=coefficients,
        support=frozenset(support),
        delta=delta,
        copies=copies,
        accuracy=epsilon,
    )


def sparse_tomo_linf(access: StateAccess, s: int, epsilon: float, delta: float,
                     seed: Seed = None, relaxation: float = 1.0) -> TomographyResult:
    """Amplitudes within epsilon in l-infinity, given |beta_0 - 1| <= eps/3 and
    |beta_x| <= eps/3 off an s-element set."""
    return _sparse_tomography(access, s, epsilon, delta, seed, "linf", True, relaxation)


def sparse_tomo_l2(access: StateAccess, s: int, epsilon: float, delta: float,
                   seed: Seed = None, relaxation: float = 1.0, phase_correct: bool = True
                   ) -> TomographyResult:
    """Amplitudes within epsilon in l2, given |beta_0 - 1| <= eps/4 and at most
    eps/4 of l2 mass off an s-element set.

    With phase_correct=False the state is learned up to a global phase, using
    the strongest heavy hitter as interference reference.
    """
    return _sparse_tomography(access, s, epsilon, delta, seed, "l2", phase_correct, relaxation)
