"""Configuration module for centric-kit.

This module provides centralized configuration management with environment variable
loading, validation, and the shared numerical defaults.
"""

from .config import config, AppConfig, RuntimeSettings, DomainConfig, domain_config

# Export constants used across services
from .config import (
    SCHEMA_VERSION, DEFAULT_RESTARTS, DEFAULT_MAX_ITERS, DEFAULT_TOL,
    ORACLE_PARTITION_BUDGET, ORACLE_CHUNK_ROWS,
    TIE_GAP, KLEINBERG_TOL, ANGLE_CLAMP_EPS,
    EXHAUSTIVE_SPLIT_MAX_N, EXHAUSTIVE_SPLIT_MAX_K, SPLIT_SAMPLE_COUNT,
    DESK_SCALE_N, FULL_SCALE_N, PRE_TRANSFORM_FACTOR, GAMMA_FACTOR,
    GAMMA_PLUS_PLUS_LAMBDA, MAX_SUBSET_FRACTION, DEFAULT_REPETITIONS,
    SVG_HASH_SALT, PLOT_AZIMUTH_DEG, PLOT_ELEVATION_DEG,
)

__all__ = [
    "config", "AppConfig", "RuntimeSettings", "DomainConfig", "domain_config",
    "SCHEMA_VERSION", "DEFAULT_RESTARTS", "DEFAULT_MAX_ITERS", "DEFAULT_TOL",
    "ORACLE_PARTITION_BUDGET", "ORACLE_CHUNK_ROWS",
    "TIE_GAP", "KLEINBERG_TOL", "ANGLE_CLAMP_EPS",
    "EXHAUSTIVE_SPLIT_MAX_N", "EXHAUSTIVE_SPLIT_MAX_K", "SPLIT_SAMPLE_COUNT",
    "DESK_SCALE_N", "FULL_SCALE_N", "PRE_TRANSFORM_FACTOR", "GAMMA_FACTOR",
    "GAMMA_PLUS_PLUS_LAMBDA", "MAX_SUBSET_FRACTION", "DEFAULT_REPETITIONS",
    "SVG_HASH_SALT", "PLOT_AZIMUTH_DEG", "PLOT_ELEVATION_DEG",
]
