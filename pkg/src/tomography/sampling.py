"""
Choi-state access and the measurement primitives built on it.

The Choi state of U is (U (x) I)|Phi> with |Phi> maximally entangled; decoding
in the Pauli-rotated Bell basis puts amplitude U_x = tr(P_x^dagger U)/2^n on
basis state |x>. Measurements are simulated from the known amplitude vector.
"""

import csv
from pathlib import Path
from typing import Iterable, Mapping, Optional, Union

import numpy as np

from ..config import settings
from ..dense.backend import pauli_decompose
from ..dense.operator import DenseOperator, as_array
from ..errors import DimensionError, InvalidInstanceError, NotUnitaryError
from ..observability.metrics import TOMOGRAPHY_COPIES_TOTAL
from ..pauli.labels import PauliLabel
from .budget import heavy_hitter_samples, restricted_shots
from .contracts import EXACT, AccessMode

Seed = Optional[Union[int, np.random.Generator]]

_NORM_TOL = 1e-10


class StateAccess:
    """Read-only amplitude vector indexed by `PauliLabel.index`."""

    def __init__(self, n: int, amplitudes: np.ndarray, mode: AccessMode = EXACT):
        amplitudes = np.array(amplitudes, dtype=complex, copy=True)
        if amplitudes.shape != (4**n,):
            raise DimensionError(f"expected {4**n} amplitudes, got shape {amplitudes.shape}")
        norm = float(np.sum(np.abs(amplitudes) ** 2))
        if abs(norm - 1.0) > _NORM_TOL:
            raise NotUnitaryError(f"state is not normalized (squared norm {norm!r})")
        amplitudes.setflags(write=False)
        self._n = n
        self._amplitudes = amplitudes
        self._mode = mode

    @property
    def n(self) -> int:
        return self._n

    @property
    def mode(self) -> AccessMode:
        return self._mode

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amplitudes

    def amplitude(self, label: PauliLabel) -> complex:
        return complex(self._amplitudes[label.index])

    def probabilities(self) -> np.ndarray:
        p = np.abs(self._amplitudes) ** 2
        return p / p.sum()

    def with_mode(self, mode: AccessMode) -> "StateAccess":
        return StateAccess(self._n, self._amplitudes, mode)

    def with_global_phase(self, phi: float) -> "StateAccess":
        return StateAccess(self._n, np.exp(1j * phi) * self._amplitudes, self._mode)

    def read_exact(self, rng: np.random.Generator) -> np.ndarray:
        """Amplitudes as an exact-mode read-out sees them (noise, then renormalization)."""
        if self._mode.sigma <= 0:
            return self._amplitudes
        noise = rng.normal(size=self._amplitudes.shape) + 1j * rng.normal(size=self._amplitudes.shape)
        noisy = self._amplitudes + self._mode.sigma * noise / np.sqrt(2)
        return noisy / np.linalg.norm(noisy)


def choi_amplitudes(U: Union[DenseOperator, np.ndarray], mode: AccessMode = EXACT) -> StateAccess:
    """Decoded Choi state of U: amplitude of |x> is tr(P_x^dagger U)/2^n."""
    matrix = as_array(U)
    dim = matrix.shape[0]
    n = dim.bit_length() - 1
    gram = matrix.conj().T @ matrix
    if np.max(np.abs(gram - np.eye(dim))) > settings.UNITARY_TOL:
        raise NotUnitaryError("Choi encoding needs a unitary")
    choi_state = matrix.reshape(-1) / np.sqrt(dim)
    # <Phi_x|choi> = tr(P_x^dagger U)/d: the Pauli transform of the reshaped state
    decoded = pauli_decompose(np.sqrt(dim) * choi_state.reshape(dim, dim))
    amplitudes = np.zeros(4**n, dtype=complex)
    for label, value in decoded.terms.items():
        amplitudes[label.index] = value
    amplitudes /= np.linalg.norm(amplitudes)
    return StateAccess(n, amplitudes, mode)


def bell_sampling_distribution(U: Union[DenseOperator, np.ndarray]) -> dict[PauliLabel, float]:
    """Bell sampling returns label x with probability |U_x|^2."""
    access = choi_amplitudes(U)
    p = access.probabilities()
    return {
        PauliLabel.from_index(access.n, int(i)): float(p[i]) for i in np.flatnonzero(p > 0)
    }


def sample_counts(access: StateAccess, shots: int, seed: Seed = None) -> dict[PauliLabel, int]:
    """Computational-basis measurement of `shots` copies."""
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, access.probabilities())
    return {
        PauliLabel.from_index(access.n, int(i)): int(counts[i]) for i in np.flatnonzero(counts)
    }


def dump_counts_csv(counts: Mapping[PauliLabel, int], path: Union[str, Path]) -> None:
    """Write a `label,count` transcript."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["label", "count"])
        for label in sorted(counts, key=str):
            writer.writerow([str(label), counts[label]])


def rank_heavy_hitters(access: StateAccess, threshold: float, delta: float,
                         rng: np.random.Generator, relaxation: float
                         ) -> tuple[dict[PauliLabel, float], int]:
    """Labels passing the heavy-hitters cut, with the statistic used for ranking."""
    if access.mode.kind == "exact":
        amplitudes = np.abs(access.read_exact(rng))
        keep = np.flatnonzero(amplitudes >= 0.75 * threshold)
        return {PauliLabel.from_index(access.n, int(i)): float(amplitudes[i]) for i in keep}, 0

    shots = heavy_hitter_samples(threshold, delta, relaxation)
    counts = rng.multinomial(shots, access.probabilities())
    TOMOGRAPHY_COPIES_TOTAL.labels(routine="heavy_hitters").inc(shots)
    frequencies = counts / shots
    # midpoint between the inclusion (threshold^2) and exclusion (threshold^2/4) levels
    keep = np.flatnonzero(frequencies >= 0.5 * threshold**2)
    return {
        PauliLabel.from_index(access.n, int(i)): float(np.sqrt(frequencies[i])) for i in keep
    }, shots


def heavy_hitters(access: StateAccess, threshold: float, delta: float, seed: Seed = None,
                  relaxation: float = 1.0) -> set[PauliLabel]:
    """Every x with |beta_x| > threshold, none with |beta_x| < threshold/2 (w.p. 1 - delta)."""
    if not 0 < threshold < 1:
        raise InvalidInstanceError(f"threshold must lie in (0, 1), got {threshold}")
    found, _ = rank_heavy_hitters(access, threshold, delta, np.random.default_rng(seed),
                                    relaxation)
    return set(found)


def restricted_tomography(access: StateAccess, support: Iterable[PauliLabel], accuracy: float,
                          delta: float, seed: Seed = None, reference: Optional[PauliLabel] = None,
                          relaxation: float = 1.0, shots: Optional[int] = None
                          ) -> dict[PauliLabel, complex]:
    """Amplitudes on `support`, up to a global phase, with the reference made real positive.

    Each non-reference x is compared with the reference r in the interference
    bases (|r> +- |x>)/sqrt2 and (|r> +- i|x>)/sqrt2, giving conj(beta_r) beta_x.
    """
    support = sorted(set(support), key=lambda label: label.index)
    reference = PauliLabel.identity(access.n) if reference is None else reference
    if reference not in support:
        raise InvalidInstanceError(f"reference label {reference} must belong to the support")
    rng = np.random.default_rng(seed)

    if access.mode.kind == "exact":
        amplitudes = access.read_exact(rng)
        return {label: complex(amplitudes[label.index]) for label in support}

    shots = shots or restricted_shots(len(support), accuracy, delta, relaxation)
    beta = access.amplitudes
    probabilities = access.probabilities()
    counts = rng.multinomial(shots, probabilities)
    TOMOGRAPHY_COPIES_TOTAL.labels(routine="restricted").inc(shots * (1 + 2 * (len(support) - 1)))
    beta_ref = float(np.sqrt(counts[reference.index] / shots))
    estimates = {reference: complex(beta_ref)}

    b_r = beta[reference.index]
    for label in support:
        if label == reference:
            continue
        b_x = beta[label.index]
        overlaps = []
        for rotation in (1.0, 1j):
            plus = abs(b_r + np.conj(rotation) * b_x) ** 2 / 2
            minus = abs(b_r - np.conj(rotation) * b_x) ** 2 / 2
            p = np.clip([plus, minus, 1.0 - plus - minus], 0.0, None)
            n_plus, n_minus, _ = rng.multinomial(shots, p / p.sum())
            overlaps.append((n_plus - n_minus) / shots)
        # conj(beta_r) beta_x = (D_re + i D_im) / 2
        g = (overlaps[0] + 1j * overlaps[1]) / 2
        estimates[label] = g / beta_ref if beta_ref > 0 else 0j
    return estimates
