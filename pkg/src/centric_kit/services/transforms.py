"""Cluster-preserving dataset transforms.

Centric transforms contract a point set toward its own gravity center:
``x' = mu(P) + lambda * (x - mu(P))``. ``gamma_star`` applies this to a whole
cluster, ``gamma_plus_plus`` to a subset of one cluster. ``angular_transform``
rescales the angle between each point and an axis, which is how concrete
Kleinberg Gamma-transformations are built; ``is_kleinberg_gamma_transform``
checks a pair of distance matrices against the Gamma conditions.
"""

from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial.distance import cdist, pdist, squareform

from centric_kit.config import ANGLE_CLAMP_EPS, KLEINBERG_TOL
from centric_kit.core.clusters import centroid, require_valid_partition
from centric_kit.core.exceptions import EmptySubsetError, TransformError
from centric_kit.core.logging_config import get_logger
from centric_kit.core.types import (
    Dataset,
    DistanceMatrix,
    KleinbergCheck,
    Partition,
    TransformKind,
    TransformOutcome,
    TransformSpec,
    as_index_array,
)
from centric_kit.services.datagen import sample_subset

logger = get_logger(__name__)

MAX_REPORTED_VIOLATIONS = 100
KLEINBERG_ROW_CHUNK = 512


# =============================================================================
# CENTRIC FAMILY
# =============================================================================

def _subset_indices(dataset: Dataset, subset: Sequence[int] | np.ndarray) -> np.ndarray:
    idx = as_index_array(subset)
    if idx.size == 0:
        raise EmptySubsetError("transform subset must contain at least one point")
    if idx[0] < 0 or idx[-1] >= dataset.n:
        raise TransformError("subset index out of range", {"n": dataset.n})
    return idx


def contract_points(points: np.ndarray, idx: np.ndarray, lam: float) -> np.ndarray:
    """Apply the centric set map to ``points[idx]`` for any lambda in [0, 1].

    lambda = 0 collapses the subset onto its centroid; lambda = 1 returns an
    exact copy.
    """
    out = np.array(points, copy=True)
    if lam == 1.0:
        return out
    mu = points[idx].mean(axis=0)
    out[idx] = mu + lam * (points[idx] - mu)
    return out


def _check_lambda(lam: float) -> None:
    if not 0.0 < lam <= 1.0:
        raise TransformError("lambda must lie in (0, 1]", {"lambda": lam})


def centric_set_transform(dataset: Dataset, subset: Sequence[int] | np.ndarray, lam: float) -> Dataset:
    """Contract ``subset`` toward its own centroid by factor ``lam``.

    Args:
        dataset: Source dataset
        subset: Non-empty index-set P
        lam: Contraction factor in (0, 1]

    Returns:
        New dataset; points outside P are bit-identical to the input
    """
    _check_lambda(lam)
    idx = _subset_indices(dataset, subset)
    return dataset.with_points(contract_points(dataset.points, idx, lam))


def _check_cluster(partition: Partition, cluster: int) -> None:
    if not 0 <= cluster < partition.k:
        raise TransformError("cluster index out of range", {"cluster": cluster, "k": partition.k})


def gamma_star(dataset: Dataset, partition: Partition, cluster: int, lam: float) -> Dataset:
    """Contract an entire cluster toward its gravity center.

    Args:
        dataset: Source dataset
        partition: Valid partition of the dataset
        cluster: Index of the cluster to contract
        lam: Contraction factor in (0, 1]

    Returns:
        The transformed dataset
    """
    require_valid_partition(dataset, partition)
    _check_cluster(partition, cluster)
    members = partition.members(cluster)
    result = centric_set_transform(dataset, members, lam)

    # per-point formula around the cluster center
    mu_c = centroid(dataset, members)
    direct = mu_c + lam * (dataset.points[members] - mu_c)
    scale = max(1.0, float(np.abs(dataset.points[members]).max()))
    if not np.allclose(result.points[members], direct, rtol=0.0, atol=1e-12 * scale):
        raise TransformError("gamma_star disagrees with the per-point cluster formula", {"cluster": cluster})
    return result


def gamma_plus_plus(
    dataset: Dataset,
    partition: Partition,
    cluster: int,
    subset: Sequence[int] | np.ndarray,
    lam: float
) -> TransformOutcome:
    """Contract a subset of one cluster toward the subset's centroid.

    Args:
        dataset: Source dataset
        partition: Valid partition of the dataset
        cluster: Cluster that must contain the whole subset
        subset: Non-empty index-set P inside ``cluster``
        lam: Contraction factor in (0, 1]

    Returns:
        TransformOutcome with the new dataset and the unchanged partition
    """
    require_valid_partition(dataset, partition)
    _check_cluster(partition, cluster)
    idx = _subset_indices(dataset, subset)
    if np.any(partition.labels[idx] != cluster):
        raise TransformError(
            "Γ⁺⁺ subset must lie within one cluster",
            {"cluster": cluster, "outside": int(np.sum(partition.labels[idx] != cluster))},
        )
    transformed = centric_set_transform(dataset, idx, lam)
    return TransformOutcome(
        dataset=transformed,
        expected_partition=partition,
        metadata={"kind": TransformKind.GAMMA_PLUS_PLUS.value, "cluster": cluster, "subset_size": int(idx.size), "lambda": lam},
    )


# =============================================================================
# KLEINBERG GAMMA-TRANSFORMATIONS
# =============================================================================

def distance_matrix(dataset: Dataset) -> DistanceMatrix:
    """Pairwise Euclidean distances of the dataset."""
    if dataset.n == 1:
        return DistanceMatrix(values=np.zeros((1, 1)))
    return DistanceMatrix(values=squareform(pdist(dataset.points, "euclidean")))


def _block_violations(
    before: np.ndarray,
    after: np.ndarray,
    same: np.ndarray,
    row_offset: int,
    tol: float,
    report: List[Dict[str, Any]]
) -> int:
    """Count Gamma violations in one block of rows (pairs i < j only)."""
    rows, cols = np.indices(before.shape)
    upper = cols > rows + row_offset
    grew = same & (after > before + tol) & upper
    shrank = ~same & (after < before - tol) & upper
    for mask, kind in ((grew, "within_increased"), (shrank, "between_decreased")):
        for r, c in zip(*np.nonzero(mask)):
            if len(report) >= MAX_REPORTED_VIOLATIONS:
                break
            report.append({
                "i": int(r + row_offset),
                "j": int(c),
                "kind": kind,
                "before": float(before[r, c]),
                "after": float(after[r, c]),
            })
    return int(grew.sum() + shrank.sum())


def is_kleinberg_gamma_transform(d: DistanceMatrix, d_prime: DistanceMatrix, partition: Partition) -> KleinbergCheck:
    """Check whether ``d_prime`` is a Gamma-transformation of ``d`` for ``partition``.

    Same-cluster distances must not increase and cross-cluster distances must
    not decrease, up to an absolute tolerance.

    Args:
        d: Original distances
        d_prime: Distances after the change
        partition: Clustering the transformation must respect

    Returns:
        KleinbergCheck with the offending pairs (truncated) and their count
    """
    if d.n != d_prime.n or d.n != partition.n:
        raise TransformError(
            "distance matrices and partition must have the same size",
            {"d": d.n, "d_prime": d_prime.n, "partition": partition.n},
        )
    labels = partition.labels
    same = labels[:, None] == labels[None, :]
    report: List[Dict[str, Any]] = []
    count = _block_violations(d.values, d_prime.values, same, 0, KLEINBERG_TOL, report)
    return KleinbergCheck(valid=count == 0, violation_count=count, violations=report)


def check_gamma_on_points(before: Dataset, after: Dataset, partition: Partition) -> KleinbergCheck:
    """Gamma-transformation check straight from coordinates, in row blocks.

    Gives the same answer as ``is_kleinberg_gamma_transform`` on the two
    distance matrices without materializing them.
    """
    if before.n != after.n or before.n != partition.n:
        raise TransformError(
            "datasets and partition must have the same size",
            {"before": before.n, "after": after.n, "partition": partition.n},
        )
    labels = partition.labels
    report: List[Dict[str, Any]] = []
    count = 0
    for start in range(0, before.n, KLEINBERG_ROW_CHUNK):
        stop = min(start + KLEINBERG_ROW_CHUNK, before.n)
        d_block = cdist(before.points[start:stop], before.points)
        dp_block = cdist(after.points[start:stop], after.points)
        same = labels[start:stop, None] == labels[None, :]
        count += _block_violations(d_block, dp_block, same, start, KLEINBERG_TOL, report)
    return KleinbergCheck(valid=count == 0, violation_count=count, violations=report)


# =============================================================================
# ANGULAR TRANSFORM
# =============================================================================

def _unit_axis(axis: Sequence[float] | np.ndarray, dim: int) -> np.ndarray:
    u = np.asarray(axis, dtype=np.float64).reshape(-1)
    if u.shape[0] != dim:
        raise TransformError("axis dimension does not match the dataset", {"axis": u.shape[0], "dim": dim})
    norm = float(np.sqrt(np.sum(u * u)))
    if not np.isfinite(norm) or norm == 0.0:
        raise TransformError("axis must be a non-zero finite vector")
    return u / norm


def angular_points(
    points: np.ndarray,
    axis: Sequence[float] | np.ndarray,
    factor: float,
    center: Optional[Sequence[float] | np.ndarray] = None,
    subset: Optional[Sequence[int] | np.ndarray] = None,
    two_sided: bool = False
) -> Tuple[np.ndarray, int]:
    """Scale each point's angle to ``axis`` about ``center`` by ``factor``.

    Norms of the offsets from ``center`` and their azimuth about the axis are
    kept. In two-sided mode the angle is taken to the nearer half of the axis
    line, so the sign of the axial component is kept as well.

    Returns:
        Tuple of (new points, number of angles clamped at pi - eps)
    """
    if not factor > 0.0 or not np.isfinite(factor):
        raise TransformError("angular factor must be positive", {"factor": factor})
    dim = points.shape[1]
    u = _unit_axis(axis, dim)
    c = np.zeros(dim) if center is None else np.asarray(center, dtype=np.float64).reshape(-1)
    if c.shape[0] != dim:
        raise TransformError("center dimension does not match the dataset", {"center": c.shape[0], "dim": dim})

    out = np.array(points, copy=True)
    idx = np.arange(points.shape[0]) if subset is None else as_index_array(subset)
    if factor == 1.0 or idx.size == 0:
        return out, 0

    v = points[idx] - c
    a = np.sum(v * u, axis=1)
    w = v - a[:, None] * u
    w_norm = np.sqrt(np.sum(w * w, axis=1))
    r = np.sqrt(np.sum(v * v, axis=1))

    if two_sided:
        side = np.where(a < 0.0, -1.0, 1.0)
        theta = np.arctan2(w_norm, np.abs(a))
    else:
        side = np.ones_like(a)
        theta = np.arctan2(w_norm, a)

    limit = np.pi - ANGLE_CLAMP_EPS
    scaled = factor * theta
    clamped = int(np.sum(scaled > limit))
    new_theta = np.minimum(scaled, limit)

    moving = w_norm > 0.0
    w_hat = np.zeros_like(w)
    w_hat[moving] = w[moving] / w_norm[moving, None]
    new_v = r[:, None] * (np.cos(new_theta)[:, None] * side[:, None] * u + np.sin(new_theta)[:, None] * w_hat)
    rows = idx[moving]
    out[rows] = c + new_v[moving]

    if clamped:
        logger.warning(f"Angular transform clamped {clamped} angles at pi - {ANGLE_CLAMP_EPS:g}")
    return out, clamped


def angular_transform(
    dataset: Dataset,
    axis: Sequence[float] | np.ndarray,
    factor: float,
    center: Optional[Sequence[float] | np.ndarray] = None,
    subset: Optional[Sequence[int] | np.ndarray] = None,
    two_sided: bool = False
) -> Dataset:
    """Rescale the angular distance of points to an axis.

    Args:
        dataset: Source dataset
        axis: Non-zero axis direction
        factor: Positive angle scaling factor (< 1 squeezes toward the axis)
        center: Point the axis passes through (origin by default)
        subset: Points to move (all by default)
        two_sided: Measure angles to the nearer half-line of the axis

    Returns:
        The transformed dataset
    """
    points, _ = angular_points(dataset.points, axis, factor, center, subset, two_sided)
    return dataset.with_points(points)


# =============================================================================
# SPEC DISPATCH
# =============================================================================

def _resolve_subset(dataset: Dataset, partition: Optional[Partition], spec: TransformSpec) -> Optional[np.ndarray]:
    """Explicit subset, or one drawn by the TransformSpec sampler."""
    if spec.subset is not None:
        return as_index_array(spec.subset)
    if spec.sample is None:
        return None
    if partition is None:
        raise TransformError("sampling a subset requires cluster labels")
    if spec.cluster is not None and spec.sample.cluster != spec.cluster:
        raise TransformError(
            "sampler cluster differs from the transform cluster",
            {"cluster": spec.cluster, "sample_cluster": spec.sample.cluster},
        )
    return sample_subset(
        dataset,
        partition,
        spec.sample.cluster,
        spec.sample.fraction,
        spec.sample.mode,
        spec.sample.seed,
        spec.sample.anchor,
    )


def apply_transform(dataset: Dataset, partition: Optional[Partition], spec: TransformSpec) -> TransformOutcome:
    """Apply one ``TransformSpec``.

    Args:
        dataset: Source dataset
        partition: Labels of the dataset (required by cluster-based kinds)
        spec: The transform to apply

    Returns:
        TransformOutcome with the new dataset, the partition it should keep
        and a metadata record of what was applied
    """
    subset = _resolve_subset(dataset, partition, spec)
    metadata: Dict[str, Any] = {"kind": spec.kind.value}

    if spec.kind in (TransformKind.GAMMA_STAR, TransformKind.GAMMA_PLUS_PLUS, TransformKind.ANGULAR) and spec.cluster is not None:
        if partition is None:
            raise TransformError(f"{spec.kind.value} on a cluster requires cluster labels")
        metadata["cluster"] = spec.cluster

    if spec.kind is TransformKind.GAMMA_STAR:
        transformed = gamma_star(dataset, partition, spec.cluster, spec.lambda_)
        metadata.update({"lambda": spec.lambda_, "subset_size": int(np.sum(partition.labels == spec.cluster))})
    elif spec.kind is TransformKind.GAMMA_PLUS_PLUS:
        outcome = gamma_plus_plus(dataset, partition, spec.cluster, subset, spec.lambda_)
        transformed = outcome.dataset
        metadata.update({"lambda": spec.lambda_, "subset_size": int(subset.size), "subset": subset.tolist()})
    elif spec.kind is TransformKind.CENTRIC_SET:
        transformed = centric_set_transform(dataset, subset, spec.lambda_)
        metadata.update({"lambda": spec.lambda_, "subset_size": int(subset.size), "subset": subset.tolist()})
    else:
        if subset is None and spec.cluster is not None:
            _check_cluster(partition, spec.cluster)
            subset = partition.members(spec.cluster)
        points, clamped = angular_points(
            dataset.points, spec.axis, spec.factor, spec.center, subset, spec.two_sided
        )
        transformed = dataset.with_points(points)
        metadata.update({
            "factor": spec.factor,
            "two_sided": spec.two_sided,
            "subset_size": dataset.n if subset is None else int(subset.size),
            "clamped": clamped,
        })

    logger.debug(f"Applied {spec.kind.value}: {metadata.get('subset_size')} points moved")
    return TransformOutcome(dataset=transformed, expected_partition=partition, metadata=metadata)


def apply_pipeline(
    dataset: Dataset,
    partition: Optional[Partition],
    specs: Sequence[TransformSpec]
) -> TransformOutcome:
    """Apply transforms in order; metadata lists every step."""
    steps = []
    current = dataset
    for spec in specs:
        outcome = apply_transform(current, partition, spec)
        current = outcome.dataset
        steps.append(outcome.metadata)
    return TransformOutcome(dataset=current, expected_partition=partition, metadata={"steps": steps})
