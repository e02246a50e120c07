"""
Exception hierarchy for the toolkit.

Library code raises these; only the CLI layer turns them into exit codes.
"""

from typing import Optional


class HamLearnError(Exception):
    """Base class for every error raised by the toolkit."""


class DimensionError(HamLearnError):
    """Qubit counts disagree or the dense cap is exceeded."""


class InvalidInstanceError(HamLearnError):
    """Malformed Hamiltonian, label or parameter."""


class NotHermitianError(HamLearnError):
    pass


class NotUnitaryError(HamLearnError):
    pass


class MinimumTimeViolation(HamLearnError):
    """An evolution shorter than the oracle's minimum time was requested."""

    def __init__(self, requested: float, minimum: float):
        self.requested = requested
        self.minimum = minimum
        super().__init__(
            f"evolution time {requested!r} is below the minimum evolution time {minimum!r}"
        )


class RegimeError(HamLearnError):
    """Parameters are inconsistent with the requested learning regime."""


class UnknownCheckError(HamLearnError):
    def __init__(self, name: str, known: Optional[list[str]] = None):
        self.name = name
        message = f"unknown check '{name}'"
        if known:
            message += f" (known: {', '.join(known)})"
        super().__init__(message)
