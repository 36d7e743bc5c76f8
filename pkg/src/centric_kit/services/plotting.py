"""Deterministic SVG scatter plots of labelled datasets.

3D data is drawn as a fixed orthographic projection onto a 2D axes, so the
output bytes depend only on the data, the labels and the view angles.
"""

from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import numpy as np
from matplotlib.figure import Figure

from centric_kit.config import PLOT_AZIMUTH_DEG, PLOT_ELEVATION_DEG, SVG_HASH_SALT
from centric_kit.core.exceptions import DataValidationError, ExportError
from centric_kit.core.logging_config import get_logger
from centric_kit.core.types import Dataset, Partition

logger = get_logger(__name__)

SINGLE_COLOR = "tab:blue"
PALETTE = "tab10"


def project_orthographic(points: np.ndarray, azimuth_deg: float, elevation_deg: float) -> np.ndarray:
    """Screen coordinates of 3D points seen from the given view angles."""
    az = np.deg2rad(azimuth_deg)
    el = np.deg2rad(elevation_deg)
    right = np.array([-np.sin(az), np.cos(az), 0.0])
    up = np.array([-np.sin(el) * np.cos(az), -np.sin(el) * np.sin(az), np.cos(el)])
    return np.column_stack([points @ right, points @ up])


def select_columns(dataset: Dataset, columns: Optional[Sequence[int]] = None) -> np.ndarray:
    """Coordinates to plot: the chosen 0-based columns, or all of a 2D/3D dataset."""
    if columns is None:
        if dataset.dim not in (2, 3):
            raise DataValidationError(
                f"cannot plot {dataset.dim}D data directly; pick 2 or 3 coordinates with --columns",
                {"dim": dataset.dim},
            )
        return dataset.points
    cols = list(columns)
    if len(cols) not in (2, 3) or any(not 0 <= c < dataset.dim for c in cols):
        raise DataValidationError("columns must name 2 or 3 existing coordinates", {"columns": cols, "dim": dataset.dim})
    return dataset.points[:, cols]


def plot_dataset(
    dataset: Dataset,
    out_path: Path,
    partition: Optional[Partition] = None,
    columns: Optional[Sequence[int]] = None,
    azimuth: float = PLOT_AZIMUTH_DEG,
    elevation: float = PLOT_ELEVATION_DEG,
    title: Optional[str] = None
) -> Path:
    """Write an SVG scatter plot colored by cluster label.

    Args:
        dataset: Points to draw
        out_path: Destination SVG file
        partition: Optional labels; without them every point gets one color
        columns: 0-based coordinates to draw (needed when d > 3)
        azimuth: View azimuth in degrees (3D only)
        elevation: View elevation in degrees (3D only)
        title: Optional figure title

    Returns:
        Path of the written file
    """
    coords = select_columns(dataset, columns)
    if partition is not None and partition.n != dataset.n:
        raise DataValidationError("label count does not match point count", {"labels": partition.n, "points": dataset.n})
    xy = project_orthographic(coords, azimuth, elevation) if coords.shape[1] == 3 else coords

    fig = Figure(figsize=(6, 6))
    ax = fig.add_subplot()
    if partition is None:
        ax.scatter(xy[:, 0], xy[:, 1], s=4, color=SINGLE_COLOR)
    else:
        cmap = matplotlib.colormaps[PALETTE]
        for label in np.unique(partition.labels):
            mask = partition.labels == label
            ax.scatter(xy[mask, 0], xy[mask, 1], s=4, color=cmap(int(label) % cmap.N), label=f"cluster {int(label)}")
        ax.legend(loc="best", markerscale=3)
    ax.set_aspect("equal", adjustable="datalim")
    if title:
        ax.set_title(title)

    try:
        out_path.parent.mkdir(parents=True, exist_ok=True)
        with matplotlib.rc_context({"svg.hashsalt": SVG_HASH_SALT}):
            fig.savefig(out_path, format="svg", metadata={"Date": None})
    except OSError as e:
        raise ExportError(f"Cannot write {out_path}", {"reason": str(e)})

    logger.info(f"Wrote plot of {dataset.n} points to {out_path}")
    return out_path
