"""
Explicit sample counts of the tomography routines.

All counts are computed before any state is prepared so the caller can pay the
oracle for exactly the copies a routine will consume. `relaxation` divides
every count uniformly.
"""

import math

from ..config import settings
from ..errors import InvalidInstanceError


def _ceil_count(value: float) -> int:
    return max(1, math.ceil(value))


def heavy_hitter_samples(threshold: float, delta: float, relaxation: float = 1.0) -> int:
    """ceil(C_hh * threshold^-2 * ln((1/threshold^2 + 1)/delta))."""
    if not 0 < threshold < 1:
        raise InvalidInstanceError(f"threshold must lie in (0, 1), got {threshold}")
    if not 0 < delta < 1:
        raise InvalidInstanceError(f"delta must lie in (0, 1), got {delta}")
    c_hh = settings.HEAVY_HITTERS_CONSTANT
    count = c_hh * threshold**-2 * math.log((threshold**-2 + 1) / delta)
    return _ceil_count(count / relaxation)


def restricted_shots(size: int, accuracy: float, delta: float, relaxation: float = 1.0) -> int:
    """Shots per measurement setting: ceil(C_tomo * |T| / accuracy^2 * ln(4|T|/delta))."""
    if size < 1:
        raise InvalidInstanceError("support must be non-empty")
    c_tomo = settings.TOMOGRAPHY_CONSTANT
    count = c_tomo * size / accuracy**2 * math.log(4 * size / delta)
    return _ceil_count(count / relaxation)


def restricted_copies(size: int, accuracy: float, delta: float, relaxation: float = 1.0) -> int:
    """One computational-basis setting plus two interference settings per non-reference label."""
    return restricted_shots(size, accuracy, delta, relaxation) * (1 + 2 * (size - 1))


def linf_support_bound(s: int) -> int:
    return s + 1


def l2_support_bound(s: int) -> int:
    # labels with |beta| >= eps/(4 sqrt(s)) carrying at most (eps/2)^2 of mass
    return 4 * s + 1


def linf_thresholds(epsilon: float) -> tuple[float, float]:
    """(heavy-hitters threshold, restricted accuracy)."""
    return 3 * epsilon / 4, epsilon / 20


def l2_thresholds(s: int, epsilon: float) -> tuple[float, float]:
    return epsilon / (2 * math.sqrt(s)), epsilon / 20


def linf_copies(s: int, epsilon: float, delta: float, relaxation: float = 1.0) -> int:
    threshold, accuracy = linf_thresholds(epsilon)
    return heavy_hitter_samples(min(threshold, 0.999), delta / 3, relaxation) + restricted_copies(
        linf_support_bound(s), accuracy, delta / 3, relaxation
    )


def l2_copies(s: int, epsilon: float, delta: float, relaxation: float = 1.0) -> int:
    threshold, accuracy = l2_thresholds(s, epsilon)
    return heavy_hitter_samples(min(threshold, 0.999), delta / 3, relaxation) + restricted_copies(
        l2_support_bound(s), accuracy, delta / 3, relaxation
    )
