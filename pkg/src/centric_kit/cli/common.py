"""Shared helpers for the command-line subcommands."""

import argparse
import sys
from pathlib import Path
from typing import Any, Optional, Tuple

from centric_kit.core.exceptions import CentricKitError, DataValidationError
from centric_kit.core.io import read_dataset_csv, read_labels_csv
from centric_kit.core.types import Dataset, Partition

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2


class UsageError(CentricKitError):
    """Raised for malformed command lines."""
    pass


class CliArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with exit code 1 instead of exiting."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def common_arguments() -> argparse.ArgumentParser:
    """Parent parser with the flags every subcommand accepts."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=None, help="Master seed (default: from config, else 0)")
    parent.add_argument("-o", "--out", type=Path, default=None, help="Output file (default: stdout where possible)")
    parent.add_argument("--config", type=Path, default=None, help="JSON configuration file")
    parent.add_argument("--log-level", default=None, help="Logging level (default: CENTRIC_KIT_LOG_LEVEL or INFO)")
    return parent


def load_labelled(path: Path, require_labels: bool = False) -> Tuple[Dataset, Optional[Partition]]:
    """Read a dataset CSV, optionally insisting on a label column."""
    dataset, partition = read_dataset_csv(path)
    if require_labels and partition is None:
        raise DataValidationError(f"{path} has no label column", {"expected": "x1,...,xd,label"})
    return dataset, partition


def load_partition(path: Path, n: int) -> Partition:
    """Read labels from a partition CSV or labelled dataset and check the length."""
    partition = read_labels_csv(path)
    if partition.n != n:
        raise DataValidationError("label file length does not match the dataset", {"labels": partition.n, "points": n})
    return partition


def sibling_path(path: Path, suffix: str) -> Path:
    """``data.json`` -> ``data<suffix>``, keeping the directory."""
    return path.with_name(path.stem + suffix)


def override(value: Any, fallback: Any) -> Any:
    """Command-line value when given, else the fallback."""
    return fallback if value is None else value
