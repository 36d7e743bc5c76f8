"""Unified configuration system for centric-kit.

This module provides centralized configuration management with environment variable
loading, validation, type safety, and the numerical defaults shared by every
service in one place.
"""

import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from centric_kit.core.logging_config import get_logger

# Local development may keep overrides in a .env file
load_dotenv()

logger = get_logger(__name__)


# =============================================================================
# NUMERICAL DEFAULTS
# =============================================================================

SCHEMA_VERSION = 1

# Lloyd's algorithm
DEFAULT_RESTARTS = 20
DEFAULT_MAX_ITERS = 300
DEFAULT_TOL = 1e-9

# Exhaustive k-means-ideal oracle. The budget counts set partitions into k
# non-empty blocks: S(14, 3) = 788970 and S(12, 4) = 611501 fit, S(15, 3)
# and S(13, 4) do not.
ORACLE_PARTITION_BUDGET = 1_000_000
ORACLE_CHUNK_ROWS = 65_536

# Tolerances
TIE_GAP = 1e-9
KLEINBERG_TOL = 1e-12
ANGLE_CLAMP_EPS = 1e-9

# Alternative split enumeration for h(lambda) analysis
EXHAUSTIVE_SPLIT_MAX_N = 10
EXHAUSTIVE_SPLIT_MAX_K = 3
SPLIT_SAMPLE_COUNT = 500

# Two-squares stability experiment
DESK_SCALE_N = 2000
FULL_SCALE_N = 10_000
PRE_TRANSFORM_FACTOR = 1.9
GAMMA_FACTOR = 0.05
GAMMA_PLUS_PLUS_LAMBDA = 0.5
MAX_SUBSET_FRACTION = 1.0 / 3.0
DEFAULT_REPETITIONS = 200

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

# Plot rendering
SVG_HASH_SALT = "centric-kit"
PLOT_AZIMUTH_DEG = -60.0
PLOT_ELEVATION_DEG = 30.0


# =============================================================================
# DOMAIN-SPECIFIC CONFIGURATION
# =============================================================================

class DomainConfig:
    """Read-only numerical configuration for the services."""

    schema_version: int = SCHEMA_VERSION

    lloyd: dict[str, float] = {
        "restarts": DEFAULT_RESTARTS,
        "max_iters": DEFAULT_MAX_ITERS,
        "tol": DEFAULT_TOL,
    }

    oracle: dict[str, int] = {
        "partition_budget": ORACLE_PARTITION_BUDGET,
        "chunk_rows": ORACLE_CHUNK_ROWS,
    }


domain_config = DomainConfig()


# =============================================================================
# SETTINGS CLASSES WITH ENVIRONMENT VARIABLE SUPPORT
# =============================================================================

class RuntimeSettings(BaseSettings):
    """Process-level settings read from CENTRIC_KIT_* environment variables."""

    threads: int = Field(default=0, description="Worker cap for parallel sections (0 = auto)")
    log_level: str = Field(default="INFO", description="Logging level")
    log_file: Optional[Path] = Field(default=None, description="Optional log file path")

    model_config = SettingsConfigDict(env_prefix="CENTRIC_KIT_", case_sensitive=False)

    @field_validator("threads")
    @classmethod
    def validate_threads(cls, v: int) -> int:
        """Reject negative worker counts."""
        if v < 0:
            raise ValueError("CENTRIC_KIT_THREADS must be >= 0 (0 = auto)")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Ensure the log level is one the logging module knows."""
        level = v.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"Unknown log level: {v}")
        return level


# =============================================================================
# UNIFIED CONFIGURATION CLASS
# =============================================================================

class AppConfig:
    """Unified configuration class that combines runtime settings and constants."""

    def __init__(self) -> None:
        """Initialize all configuration sections."""
        self.runtime = RuntimeSettings()
        self.domain = domain_config

    def worker_count(self) -> int:
        """Resolve the worker cap; 0 means one worker per CPU.

        The environment is re-read on every call so a changed
        CENTRIC_KIT_THREADS takes effect without rebuilding the config.
        """
        threads = RuntimeSettings().threads
        if threads == 0:
            return max(1, os.cpu_count() or 1)
        return threads

    def validate_configuration(self) -> tuple[bool, list[str]]:
        """Validate the current configuration.

        Returns:
            Tuple of (is_valid, list_of_errors)
        """
        errors = []
        if self.domain.oracle["partition_budget"] <= 0:
            errors.append("Oracle partition budget must be positive")
        if self.domain.lloyd["restarts"] < 1:
            errors.append("Default restart count must be at least 1")
        if self.runtime.log_file is not None and self.runtime.log_file.is_dir():
            errors.append(f"Log file path is a directory: {self.runtime.log_file}")
        return len(errors) == 0, errors

    def log_configuration(self) -> None:
        """Log current configuration at debug level."""
        logger.debug(f"[Config] Workers: {self.worker_count()} (CENTRIC_KIT_THREADS={self.runtime.threads})")
        logger.debug(f"[Config] Log level: {self.runtime.log_level}")
        logger.debug(f"[Config] Lloyd defaults: {self.domain.lloyd}")
        logger.debug(f"[Config] Oracle budget: {self.domain.oracle['partition_budget']} partitions")

        is_valid, issues = self.validate_configuration()
        for issue in issues:
            logger.warning(f"[Config] {issue}")


# =============================================================================
# SINGLETON INSTANCES
# =============================================================================

config = AppConfig()
