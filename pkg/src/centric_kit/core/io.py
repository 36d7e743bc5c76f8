"""Reading and writing datasets, partitions and JSON documents.

Datasets use a plain CSV layout: a header ``x1,...,xd[,label]`` and one point
per row. Floats are written with 17 significant digits so a file read back
reproduces the exact doubles.
"""

import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Type, TypeVar

import numpy as np
import pandas as pd
from pydantic import BaseModel, ValidationError

from centric_kit.config import SCHEMA_VERSION
from centric_kit.core.exceptions import DataValidationError, ExportError
from centric_kit.core.logging_config import get_logger
from centric_kit.core.types import Dataset, Partition

logger = get_logger(__name__)

FLOAT_FORMAT = "%.17g"
LABEL_COLUMN = "label"

ModelT = TypeVar("ModelT", bound=BaseModel)


def coordinate_columns(dim: int) -> List[str]:
    """Header names for a d-dimensional point matrix."""
    return [f"x{i + 1}" for i in range(dim)]


def validate_dataset_file(file_path: Path) -> Tuple[bool, List[str]]:
    """Check that a dataset CSV exists and has a usable header.

    Args:
        file_path: Path to the CSV file

    Returns:
        Tuple of (is_valid, list_of_errors)
    """
    errors = []
    if not file_path.exists():
        errors.append(f"File not found: {file_path}")
        return False, errors
    if file_path.suffix.lower() != ".csv":
        errors.append(f"Unsupported file type: {file_path.suffix or '(none)'}. Expected .csv")

    try:
        header = pd.read_csv(file_path, nrows=0).columns.tolist()
    except Exception as e:
        errors.append(f"File read error: {str(e)}")
        return False, errors

    coords = [c for c in header if c != LABEL_COLUMN]
    if not coords:
        errors.append("No coordinate columns found (expected x1,...,xd)")
    elif coords != coordinate_columns(len(coords)):
        errors.append(f"Coordinate columns must be x1..x{len(coords)} in order, got {coords}")
    if header.count(LABEL_COLUMN) > 1:
        errors.append("Duplicate label column")
    return len(errors) == 0, errors


def _labels_from_series(series: pd.Series) -> np.ndarray:
    """Convert a label column to non-negative integers."""
    if series.isna().any():
        raise DataValidationError("Label column contains missing values")
    values = series.to_numpy()
    if not np.issubdtype(values.dtype, np.integer):
        as_float = values.astype(np.float64)
        if not np.all(np.equal(np.mod(as_float, 1), 0)):
            raise DataValidationError("Labels must be integers")
        values = as_float.astype(np.int64)
    if np.any(values < 0):
        raise DataValidationError("Labels must be non-negative")
    return values.astype(np.int64)


def read_dataset_csv(file_path: Path) -> Tuple[Dataset, Optional[Partition]]:
    """Load a dataset and its optional label column.

    Args:
        file_path: Path to a CSV in the ``x1,...,xd[,label]`` layout

    Returns:
        Tuple of (dataset, partition or None when there is no label column)
    """
    is_valid, errors = validate_dataset_file(file_path)
    if not is_valid:
        raise ExportError(f"Cannot read dataset {file_path}", {"errors": "; ".join(errors)})

    df = pd.read_csv(file_path, float_precision="round_trip")
    coords = [c for c in df.columns if c != LABEL_COLUMN]
    try:
        dataset = Dataset(points=df[coords].to_numpy(dtype=np.float64))
    except ValidationError as e:
        raise DataValidationError(f"Invalid dataset in {file_path}", {"reason": str(e.errors()[0]["msg"])})

    partition = None
    if LABEL_COLUMN in df.columns:
        labels = _labels_from_series(df[LABEL_COLUMN])
        partition = Partition.from_labels(labels)

    logger.debug(f"Read {dataset.n} points in {dataset.dim}D from {file_path}")
    return dataset, partition


def write_dataset_csv(
    dataset: Dataset,
    file_path: Optional[Path],
    partition: Optional[Partition] = None
) -> None:
    """Write a dataset (and optionally its labels) as CSV.

    Args:
        dataset: Points to write
        file_path: Destination, or None for stdout
        partition: Optional labels written as the last column
    """
    df = pd.DataFrame(dataset.points, columns=coordinate_columns(dataset.dim))
    if partition is not None:
        if partition.n != dataset.n:
            raise DataValidationError("Label count does not match point count", {"labels": partition.n, "points": dataset.n})
        df[LABEL_COLUMN] = partition.labels
    write_frame_csv(df, file_path)


def read_labels_csv(file_path: Path) -> Partition:
    """Read a partition file with a single ``label`` column (or a labelled dataset)."""
    if not file_path.exists():
        raise ExportError(f"File not found: {file_path}")
    df = pd.read_csv(file_path)
    if LABEL_COLUMN not in df.columns:
        raise ExportError(f"No '{LABEL_COLUMN}' column in {file_path}")
    return Partition.from_labels(_labels_from_series(df[LABEL_COLUMN]))


def write_labels_csv(partition: Partition, file_path: Optional[Path]) -> None:
    """Write a partition as a single ``label`` column."""
    write_frame_csv(pd.DataFrame({LABEL_COLUMN: partition.labels}), file_path)


def write_frame_csv(df: pd.DataFrame, file_path: Optional[Path]) -> None:
    """Write a frame to a file or stdout with exact float formatting."""
    try:
        if file_path is None:
            df.to_csv(sys.stdout, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
            return
        file_path.parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(file_path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        logger.debug(f"Wrote {len(df)} rows to {file_path}")
    except OSError as e:
        raise ExportError(f"Cannot write {file_path}", {"reason": str(e)})


# =============================================================================
# JSON
# =============================================================================

def read_json(file_path: Path) -> Any:
    """Parse a JSON document."""
    try:
        with open(file_path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise ExportError(f"File not found: {file_path}")
    except json.JSONDecodeError as e:
        raise ExportError(f"Invalid JSON in {file_path}", {"reason": str(e)})


def read_model(file_path: Path, model_cls: Type[ModelT]) -> ModelT:
    """Load and validate one JSON object into ``model_cls``."""
    return model_cls.model_validate(read_json(file_path))


def read_models(file_path: Path, model_cls: Type[ModelT]) -> List[ModelT]:
    """Load a JSON object or a JSON list of objects into ``model_cls`` instances."""
    payload = read_json(file_path)
    items = payload if isinstance(payload, list) else [payload]
    return [model_cls.model_validate(item) for item in items]


def dumps_json(payload: Any) -> str:
    """Serialize with sorted keys and a trailing newline for stable bytes."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_json(payload: Any, file_path: Optional[Path]) -> None:
    """Write a JSON document to a file, or to stdout when no path is given."""
    text = dumps_json(payload)
    if file_path is None:
        sys.stdout.write(text)
        return
    try:
        file_path.parent.mkdir(parents=True, exist_ok=True)
        file_path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise ExportError(f"Cannot write {file_path}", {"reason": str(e)})


# =============================================================================
# PROVENANCE
# =============================================================================

def provenance_path(file_path: Path) -> Path:
    """Sidecar path recording how ``file_path`` was produced."""
    return file_path.with_name(file_path.name + ".provenance.json")


def append_provenance(source: Path, target: Path, records: List[Dict[str, Any]]) -> Path:
    """Write ``target``'s provenance: the source's history plus ``records``.

    Args:
        source: Input dataset file
        target: Output dataset file
        records: Applied transform specs in application order

    Returns:
        Path of the written sidecar
    """
    history: Dict[str, Any] = {"schema": SCHEMA_VERSION, "origin": str(source), "transforms": []}
    source_sidecar = provenance_path(source)
    if source_sidecar.exists():
        previous = read_json(source_sidecar)
        history["origin"] = previous.get("origin", str(source))
        history["transforms"] = list(previous.get("transforms", []))
    history["transforms"].extend(records)

    sidecar = provenance_path(target)
    write_json(history, sidecar)
    return sidecar
