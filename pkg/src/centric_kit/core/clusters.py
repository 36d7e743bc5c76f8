"""Centroid and partition utilities shared by every service."""

from typing import List, Sequence

import numpy as np

from centric_kit.core.exceptions import DataValidationError, EmptySubsetError, PartitionError
from centric_kit.core.types import ClusterStats, Dataset, Partition, as_index_array


def _check_indices(dataset: Dataset, subset: np.ndarray) -> None:
    """Raise when an index falls outside the dataset."""
    if subset.size and (subset[0] < 0 or subset[-1] >= dataset.n):
        raise DataValidationError(
            "Subset index out of range",
            {"min": int(subset[0]), "max": int(subset[-1]), "n": dataset.n},
        )


def centroid(dataset: Dataset, subset: Sequence[int] | np.ndarray) -> np.ndarray:
    """Gravity center of the selected points.

    Args:
        dataset: Source dataset
        subset: Indices of the points to average

    Returns:
        The coordinate-wise mean as a d-vector
    """
    idx = as_index_array(subset)
    if idx.size == 0:
        raise EmptySubsetError("empty point set has no centroid")
    _check_indices(dataset, idx)
    return dataset.points[idx].mean(axis=0)


def within_ss(points: np.ndarray) -> float:
    """Sum of squared distances of ``points`` to their mean (0 for no points)."""
    if points.shape[0] == 0:
        return 0.0
    diff = points - points.mean(axis=0)
    return float(np.sum(diff * diff))


def validate_partition(dataset: Dataset, partition: Partition) -> List[str]:
    """Report every way ``partition`` fails to be a partition of ``dataset``.

    Args:
        dataset: Dataset the partition should describe
        partition: Candidate partition

    Returns:
        List of violation messages; empty when the partition is valid
    """
    violations: List[str] = []
    labels = partition.labels
    if labels.shape[0] != dataset.n:
        violations.append(f"length mismatch: {labels.shape[0]} labels for {dataset.n} points")

    out_of_range = np.flatnonzero((labels < 0) | (labels >= partition.k))
    for i in out_of_range:
        violations.append(f"label out of range: {int(labels[i])} at index {int(i)}")

    in_range = labels[(labels >= 0) & (labels < partition.k)]
    counts = np.bincount(in_range, minlength=partition.k)
    for j in np.flatnonzero(counts == 0):
        violations.append(f"cluster {int(j)} empty")
    return violations


def require_valid_partition(dataset: Dataset, partition: Partition) -> None:
    """Raise ``PartitionError`` listing every violation, if there is any."""
    violations = validate_partition(dataset, partition)
    if violations:
        raise PartitionError("invalid partition for dataset", violations)


def cluster_stats(dataset: Dataset, partition: Partition) -> List[ClusterStats]:
    """Centroid, size and within-cluster sum of squares per cluster.

    Args:
        dataset: Source dataset
        partition: A valid partition of the dataset

    Returns:
        One ``ClusterStats`` per cluster in cluster-index order
    """
    require_valid_partition(dataset, partition)
    stats = []
    for j in range(partition.k):
        members = dataset.points[partition.labels == j]
        stats.append(
            ClusterStats(
                centroid=members.mean(axis=0),
                size=int(members.shape[0]),
                within_ss=within_ss(members),
            )
        )
    return stats


def cluster_of(partition: Partition, subset: Sequence[int] | np.ndarray) -> int:
    """Return the single cluster containing every index of ``subset``.

    Raises:
        EmptySubsetError: If the subset is empty
        DataValidationError: If the subset spans several clusters
    """
    idx = as_index_array(subset)
    if idx.size == 0:
        raise EmptySubsetError("subset must contain at least one point")
    if idx[0] < 0 or idx[-1] >= partition.n:
        raise DataValidationError("Subset index out of range", {"n": partition.n})
    clusters = np.unique(partition.labels[idx])
    if clusters.size != 1:
        raise DataValidationError(
            "subset spans several clusters",
            {"clusters": clusters.tolist()},
        )
    return int(clusters[0])
