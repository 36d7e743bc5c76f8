"""Logging configuration for centric-kit.

This module provides centralized logging setup. Console output goes to stderr
so that JSON and CSV written to stdout by the command-line tool stay clean.
"""

import logging
import sys
from pathlib import Path
from typing import Optional

ROOT_LOGGER_NAME = "centric_kit"


def setup_logging(
    level: str = "INFO",
    log_file: Optional[Path] = None
) -> logging.Logger:
    """Set up logging configuration for the package.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Optional file path for logging output

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(ROOT_LOGGER_NAME)
    logger.setLevel(getattr(logging, level.upper(), logging.INFO))

    # Clear any existing handlers
    logger.handlers.clear()

    formatter = logging.Formatter(
        fmt='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    # Prevent propagation to root logger
    logger.propagate = False

    return logger


def get_logger(name: str = ROOT_LOGGER_NAME) -> logging.Logger:
    """Get a logger instance for a specific module.

    Args:
        name: Name of the logger (typically module name)

    Returns:
        Logger instance
    """
    return logging.getLogger(name)


# Convenience functions for command-level messages
def log_info(message: str) -> None:
    """Log an info message on the package logger."""
    get_logger().info(message)


def log_warning(message: str) -> None:
    """Log a warning message on the package logger."""
    get_logger().warning(message)


def log_error(message: str) -> None:
    """Log an error message on the package logger."""
    get_logger().error(message)


def log_success(message: str) -> None:
    """Log a success message on the package logger."""
    get_logger().info(f"SUCCESS: {message}")
