"""Synthetic labelled datasets and reproducible subset samplers.

Two families are available: the two-squares 3D dataset (two equal squares
touching at one corner, labelled by square) and isotropic Gaussian blobs.
Every generator is a pure function of its parameters and seed.
"""

import math
from typing import Optional, Tuple

import numpy as np
from scipy.spatial.transform import Rotation

from centric_kit.config import TIE_GAP
from centric_kit.core.exceptions import DataValidationError
from centric_kit.core.logging_config import get_logger
from centric_kit.core.seeding import make_rng
from centric_kit.core.types import Dataset, GenKind, GenSpec, Partition, SubsetMode

logger = get_logger(__name__)

DIAGONAL_AXIS = np.array([1.0, 1.0, 0.0]) / np.sqrt(2.0)
SHARED_CORNER = np.zeros(3)
SECOND_SQUARE_ROTATION = Rotation.from_rotvec(0.5 * np.pi * DIAGONAL_AXIS)
CENTER_PLACEMENT_ATTEMPTS = 10_000


def _mirrored_square(count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` unit-square coordinates closed under swapping s and t.

    Points come in (s, t), (t, s) pairs; an odd count adds one point on the
    diagonal s = t. The sample mean therefore lies on the diagonal.
    """
    pairs = rng.random((count // 2, 2))
    parts = [pairs, pairs[:, ::-1]]
    if count % 2:
        parts.append(np.repeat(rng.random((1, 1)), 2, axis=1))
    return np.vstack(parts)


def two_squares_3d(
    n: int,
    edge: float = 1.0,
    seed: int = 0,
    mirrored: bool = False
) -> Tuple[Dataset, Partition]:
    """Points uniform on two squares that share one corner at the origin.

    Square 0 spans (-edge, -edge, 0) to (0, 0, 0) in the z = 0 plane. Square 1
    is the mirror square (0, 0, 0) to (edge, edge, 0) turned 90 degrees about
    the diagonal axis (1, 1, 0)/sqrt(2), so it stands out of the plane.

    With ``mirrored`` the sample of square 0 is symmetric about the diagonal
    and square 1 is its exact image, so both cluster means lie on the diagonal
    axis at equal distances from the corner. Each square stays uniform.

    Args:
        n: Total number of points (at least 2; even when mirrored)
        edge: Edge length of both squares
        seed: Generation seed
        mirrored: Draw diagonal-symmetric, congruent samples on both squares

    Returns:
        Tuple of (dataset, labels by square); square 0 gets ceil(n/2) points
    """
    if n < 2:
        raise DataValidationError("two_squares_3d needs at least 2 points", {"n": n})
    if not edge > 0:
        raise DataValidationError("edge must be positive", {"edge": edge})
    if mirrored and n % 2:
        raise DataValidationError("mirrored two_squares_3d needs an even n", {"n": n})

    rng = make_rng(seed)
    n0 = (n + 1) // 2
    n1 = n // 2

    if mirrored:
        st0 = _mirrored_square(n0, rng)
        square0 = np.column_stack([-edge * st0[:, 0], -edge * st0[:, 1], np.zeros(n0)])
        square1 = SECOND_SQUARE_ROTATION.apply(-square0)
    else:
        st0 = rng.random((n0, 2))
        square0 = np.column_stack([-edge * st0[:, 0], -edge * st0[:, 1], np.zeros(n0)])
        st1 = rng.random((n1, 2))
        flat1 = np.column_stack([edge * st1[:, 0], edge * st1[:, 1], np.zeros(n1)])
        square1 = SECOND_SQUARE_ROTATION.apply(flat1)

    points = np.vstack([square0, square1])
    labels = np.concatenate([np.zeros(n0, dtype=np.int64), np.ones(n1, dtype=np.int64)])
    logger.debug(f"Generated two-squares dataset: n={n} edge={edge} seed={seed} mirrored={mirrored}")
    return Dataset(points=points), Partition(labels=labels, k=2)


def square_membership(points: np.ndarray, edge: float = 1.0, tol: float = TIE_GAP) -> np.ndarray:
    """Which square of ``two_squares_3d`` each point lies on.

    Args:
        points: n x 3 coordinates
        edge: Edge length used at generation
        tol: Slack for the plane and boundary tests

    Returns:
        Vector of 0 or 1 per point, -1 for points on neither square (the
        shared corner counts as square 0)
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise DataValidationError("square membership needs 3D points", {"shape": list(pts.shape)})

    def on_square(q: np.ndarray, low: float, high: float) -> np.ndarray:
        return (
            (np.abs(q[:, 2]) <= tol)
            & (q[:, 0] >= low - tol) & (q[:, 0] <= high + tol)
            & (q[:, 1] >= low - tol) & (q[:, 1] <= high + tol)
        )

    in_first = on_square(pts, -edge, 0.0)
    in_second = on_square(SECOND_SQUARE_ROTATION.inv().apply(pts), 0.0, edge)
    return np.where(in_first, 0, np.where(in_second, 1, -1)).astype(np.int64)


def _blob_centers(k: int, dim: int, separation: float, rng: np.random.Generator) -> np.ndarray:
    """Blob centers at pairwise distance >= separation.

    Centers are drawn uniformly in a cube that grows with k; when rejection
    sampling keeps failing they fall back to a line with exact spacing.
    """
    side = separation * max(2.0, float(k))
    centers = []
    for _ in range(CENTER_PLACEMENT_ATTEMPTS):
        if len(centers) == k:
            break
        candidate = rng.uniform(0.0, side, size=dim)
        if all(np.linalg.norm(candidate - c) >= separation for c in centers):
            centers.append(candidate)
    if len(centers) < k:
        logger.warning(f"Placing {k} blob centers on a line after {CENTER_PLACEMENT_ATTEMPTS} attempts")
        line = np.zeros((k, dim))
        line[:, 0] = separation * np.arange(k)
        return line
    return np.array(centers)


def gaussian_blobs(
    k: int,
    n_per: int,
    dim: int = 2,
    spread: float = 1.0,
    separation: float = 10.0,
    seed: int = 0
) -> Tuple[Dataset, Partition]:
    """Isotropic Gaussian clusters, labelled by generating blob.

    Args:
        k: Number of blobs
        n_per: Points per blob
        dim: Dimension
        spread: Standard deviation of every blob
        separation: Minimum distance between blob centers
        seed: Generation seed

    Returns:
        Tuple of (dataset, labels); points are grouped blob by blob
    """
    for name, value in (("k", k), ("n_per", n_per), ("dim", dim), ("spread", spread), ("separation", separation)):
        if not value > 0:
            raise DataValidationError(f"{name} must be positive", {name: value})

    rng = make_rng(seed)
    centers = _blob_centers(k, dim, separation, rng)
    labels = np.repeat(np.arange(k, dtype=np.int64), n_per)
    points = centers[labels] + spread * rng.standard_normal((k * n_per, dim))
    logger.debug(f"Generated {k} Gaussian blobs: n_per={n_per} dim={dim} seed={seed}")
    return Dataset(points=points), Partition(labels=labels, k=k)


def generate(spec: GenSpec) -> Tuple[Dataset, Partition]:
    """Generate the dataset described by ``spec``."""
    if spec.kind is GenKind.TWO_SQUARES_3D:
        return two_squares_3d(spec.n, spec.edge, spec.seed, spec.mirrored)
    n_per = spec.n_per if spec.n_per is not None else spec.n // spec.k
    return gaussian_blobs(spec.k, n_per, spec.dim, spec.spread, spec.separation, spec.seed)


def subset_size(fraction: float, cluster_size: int) -> int:
    """ceil(fraction * cluster_size), robust to representation error in the product."""
    return max(1, math.ceil(round(fraction * cluster_size, 9)))


def sample_subset(
    dataset: Dataset,
    partition: Partition,
    cluster: int,
    fraction: float,
    mode: SubsetMode = SubsetMode.UNIFORM,
    seed: int = 0,
    anchor: Optional[int] = None
) -> np.ndarray:
    """Draw a fragment of one cluster.

    Uniform mode samples without replacement. Ball mode takes a seed point
    (``anchor`` or a random member) and its nearest cluster-mates, ties broken
    by index.

    Args:
        dataset: Points of the partition
        partition: Cluster labels
        cluster: Cluster to sample from
        fraction: Share of the cluster, in (0, 1]
        mode: Uniform or ball sampling
        seed: Sampling seed
        anchor: Seed point for ball mode

    Returns:
        Sorted index array of exactly ceil(fraction * |cluster|) members
    """
    if not 0 <= cluster < partition.k:
        raise DataValidationError("cluster index out of range", {"cluster": cluster, "k": partition.k})
    if not 0.0 < fraction <= 1.0:
        raise DataValidationError("fraction must lie in (0, 1]", {"fraction": fraction})
    if partition.n != dataset.n:
        raise DataValidationError("partition does not match dataset", {"labels": partition.n, "points": dataset.n})
    members = partition.members(cluster)
    if members.size == 0:
        raise DataValidationError("cannot sample from an empty cluster", {"cluster": cluster})

    size = subset_size(fraction, members.size)
    rng = make_rng(seed)
    if SubsetMode(mode) is SubsetMode.UNIFORM:
        return np.sort(rng.choice(members, size=size, replace=False))

    if anchor is None:
        anchor = int(members[rng.integers(0, members.size)])
    elif not 0 <= anchor < partition.n or partition.labels[anchor] != cluster:
        raise DataValidationError("ball anchor must belong to the sampled cluster", {"anchor": anchor, "cluster": cluster})
    diff = dataset.points[members] - dataset.points[anchor]
    dist = np.sum(diff * diff, axis=1)
    order = np.lexsort((members, dist))
    return np.sort(members[order[:size]])
