"""
Regime constants of the main loop and the predicted total evolution time.
"""

import math
from typing import Optional

from ..errors import InvalidInstanceError, RegimeError
from ..utils.logging import get_logger
from .contracts import Regime, RegimeParams

logger = get_logger(__name__)


def poly_regime_time(m: int, K: int, C: float = 1.0) -> float:
    """T = m^{-1/K} / (16 e C), the minimum time under which the degree-(K-1)
    BCH truncation is accurate enough for the polynomially sparse regime."""
    return m ** (-1.0 / K) / (16 * math.e * C)


def relaxation_limit(m: int, c_F: float, c_inf: float) -> float:
    """Largest relaxation keeping the integer-time accuracy c_F c_inf t^2 eps^2 below 1.

    That accuracy peaks at c^2 / (100 c_F c_inf) just below the switch threshold.
    """
    return 2560 * math.sqrt(m * c_F * c_inf)


def regime_params(m: int, n: int, T: float, K: Optional[int] = None,
                  regime: Regime = "log_sparse", relaxation: float = 1.0) -> RegimeParams:
    """
    log_sparse: s = 4^m, c_F = 2 pi sqrt(m) T, c_inf = 2 pi m T.
    poly_sparse: s = k (2m)^k with k = K - 1, c_F = 2 sqrt(m), c_inf = 2m.
    Both use c = relaxation / (256 sqrt(m)).
    """
    if n < 1:
        raise InvalidInstanceError(f"n must be positive, got {n}")
    if not 1 <= m <= 4**n - 1:
        raise InvalidInstanceError(f"m must lie in [1, {4**n - 1}] for n={n}, got {m}")
    if T <= 0:
        raise InvalidInstanceError(f"T must be positive, got {T}")
    if relaxation < 1:
        raise InvalidInstanceError(f"relaxation must be at least 1, got {relaxation}")

    c = relaxation / (256 * math.sqrt(m))
    if regime == "log_sparse":
        s = 4**m
        c_F = 2 * math.pi * math.sqrt(m) * T
        c_inf = 2 * math.pi * m * T
        K = None
    elif regime == "poly_sparse":
        if K is None or K < 2:
            raise RegimeError(f"poly_sparse regime needs an integer K >= 2, got {K}")
        k = K - 1
        s = k * (2 * m) ** k
        c_F = 2 * math.sqrt(m)
        c_inf = 2.0 * m
        expected = poly_regime_time(m, K)
        if T > expected * (1 + 1e-9):
            logger.warning(
                f"T={T:.6g} exceeds m^(-1/K)/(16e)={expected:.6g}; "
                "the BCH truncation bounds behind s do not apply"
            )
    else:
        raise RegimeError(f"unknown regime '{regime}'")

    limit = relaxation_limit(m, c_F, c_inf)
    if relaxation >= limit:
        raise RegimeError(
            f"relaxation {relaxation!r} drives the integer-time tomography accuracy to 1 or "
            f"more; it must stay below {limit:.6g} for m={m}, T={T!r}"
        )

    return RegimeParams(
        regime=regime,
        m=m,
        n=n,
        T=T,
        s=s,
        c_F=c_F,
        c_inf=c_inf,
        c=c,
        eta_sw=c / (10 * c_F * c_inf),
        K=K,
        relaxation=relaxation,
    )


def predicted_total_time(params: RegimeParams, epsilon: float) -> float:
    """Leading-order total evolution time, logarithmic factors dropped.

    log_sparse: min(4^m T^3 / eps, 4^m T / eps^2).
    poly_sparse: min(m^{K+2} T / eps, m^K T / eps^2).
    """
    if epsilon <= 0:
        raise InvalidInstanceError(f"epsilon must be positive, got {epsilon}")
    m, T = params.m, params.T
    if params.regime == "log_sparse":
        return min(4**m * T**3 / epsilon, 4**m * T / epsilon**2)
    K = params.K
    return min(m ** (K + 2) * T / epsilon, m**K * T / epsilon**2)
