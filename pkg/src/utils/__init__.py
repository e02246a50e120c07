"""
Utility modules
"""

from .context import get_run_id, get_trial, set_run_id, set_trial
from .logging import get_logger, setup_logging

__all__ = [
    "get_run_id",
    "get_trial",
    "set_run_id",
    "set_trial",
    "get_logger",
    "setup_logging",
]
