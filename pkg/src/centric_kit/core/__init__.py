"""Core functionality for centric-kit.

Exceptions and logging live here. Domain models are imported from
``centric_kit.core.types`` directly because they depend on the config package.
"""

from .exceptions import (
    CentricKitError,
    ConfigurationError,
    DataValidationError,
    PartitionError,
    EmptySubsetError,
    TransformError,
    OracleBudgetError,
    AnalysisError,
    ExportError,
)
from .logging_config import setup_logging, get_logger, log_info, log_warning, log_error, log_success

__all__ = [
    "CentricKitError",
    "ConfigurationError",
    "DataValidationError",
    "PartitionError",
    "EmptySubsetError",
    "TransformError",
    "OracleBudgetError",
    "AnalysisError",
    "ExportError",
    "setup_logging",
    "get_logger",
    "log_info",
    "log_warning",
    "log_error",
    "log_success",
]
