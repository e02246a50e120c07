"""
Configuration settings for the Hamiltonian learning toolkit
"""

from typing import Literal, Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Toolkit configuration loaded from .env file or environment variables.
    """
    model_config = SettingsConfigDict(env_file=".env", extra="ignore")

    # Project Metadata
    PROJECT_NAME: str = "hamlearn"
    PROJECT_VERSION: str = "1.0.0"

    # Environment
    ENVIRONMENT: str = "development"

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FILE: Optional[str] = None
    LOG_FORMAT: Literal["text", "json"] = "text"

    # Dense kernels
    DENSE_MAX_QUBITS: int = 8
    HERMITIAN_TOL: float = 1e-12
    UNITARY_TOL: float = 1e-10
    ZERO_COEFF_TOL: float = 1e-14
    BRANCH_TOL: float = 1e-6

    # Tomography sample constants
    HEAVY_HITTERS_CONSTANT: float = 16.0
    TOMOGRAPHY_CONSTANT: float = 8.0

    # BCH
    BCH_MAX_DEGREE: int = 6

    # Execution
    MAX_WORKERS: int = 4

    # Observability
    METRICS_ENABLED: bool = True
    TRACING_ENABLED: bool = False

    # Reports
    REPORT_SCHEMA_VERSION: int = 1

    def validate_settings(self) -> None:
        """Validate numeric settings."""
        for name in (
            "HERMITIAN_TOL",
            "UNITARY_TOL",
            "ZERO_COEFF_TOL",
            "BRANCH_TOL",
            "HEAVY_HITTERS_CONSTANT",
            "TOMOGRAPHY_CONSTANT",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 1 <= self.DENSE_MAX_QUBITS <= 10:
            raise ValueError("DENSE_MAX_QUBITS must lie in [1, 10]")
        if self.BCH_MAX_DEGREE < 1:
            raise ValueError("BCH_MAX_DEGREE must be at least 1")
        if self.MAX_WORKERS < 1:
            raise ValueError("MAX_WORKERS must be at least 1")


# Instantiate settings to be imported across the application
settings = Settings()
