"""
Context management for run-scoped data
"""

from contextvars import ContextVar
from typing import Optional

# Identifier of the current CLI run (learn/sweep/verify)
current_run_id: ContextVar[Optional[str]] = ContextVar('current_run_id', default=None)

# Index of the current trial inside a check or sweep
current_trial: ContextVar[Optional[int]] = ContextVar('current_trial', default=None)


def set_run_id(run_id: Optional[str]) -> None:
    """Set the current run ID in context."""
    current_run_id.set(run_id or None)


def get_run_id() -> Optional[str]:
    """Get the current run ID from context."""
    return current_run_id.get()


def set_trial(trial: Optional[int]) -> None:
    current_trial.set(trial)


def get_trial() -> Optional[int]:
    return current_trial.get()
