"""k-means cost, Lloyd's algorithm, the exhaustive oracle and the error metric.

The cost Q of a partition is available in its centroid form (``cost``) and in
both pairwise-distance forms (``cost_pairwise``). ``lloyd`` finds a local
optimum from several seeded restarts; ``kmeans_ideal`` finds the global
optimum of small instances by enumerating every set partition.
"""

from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np
from more_itertools import set_partitions
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist, pdist

from centric_kit.config import ORACLE_CHUNK_ROWS, ORACLE_PARTITION_BUDGET, config
from centric_kit.core.clusters import require_valid_partition, within_ss
from centric_kit.core.exceptions import AnalysisError, CentricKitError, DataValidationError, OracleBudgetError
from centric_kit.core.logging_config import get_logger
from centric_kit.core.seeding import spawn_rngs
from centric_kit.core.types import ClusteringResult, Dataset, InitMethod, LloydConfig, Partition

logger = get_logger(__name__)

# Relative slack allowed when asserting that Lloyd never increases Q
MONOTONE_RTOL = 1e-9
PAIRWISE_ROW_CHUNK = 1024


# =============================================================================
# COST
# =============================================================================

def cost(dataset: Dataset, partition: Partition) -> float:
    """k-means cost Q as the sum of squared distances to cluster centroids.

    Args:
        dataset: Points to cluster
        partition: A valid partition of the dataset

    Returns:
        Q of the partition
    """
    require_valid_partition(dataset, partition)
    return float(sum(within_ss(dataset.points[partition.labels == j]) for j in range(partition.k)))


def _pairwise_forms(members: np.ndarray) -> Tuple[float, float]:
    """Both pairwise forms of one cluster's contribution to Q.

    Returns:
        Tuple of (unordered-pair form, ordered-pair form)
    """
    n_j = members.shape[0]
    if n_j < 2:
        return 0.0, 0.0
    unordered = float(pdist(members, "sqeuclidean").sum()) / n_j
    ordered = 0.0
    for start in range(0, n_j, PAIRWISE_ROW_CHUNK):
        block = members[start:start + PAIRWISE_ROW_CHUNK]
        ordered += float(cdist(block, members, "sqeuclidean").sum())
    return unordered, ordered / (2.0 * n_j)


def cost_pairwise(dataset: Dataset, partition: Partition) -> float:
    """k-means cost Q from within-cluster pairwise squared distances.

    Both the unordered-pair form (1/n_j per pair) and the ordered-pair form
    (1/(2 n_j) per ordered pair) are evaluated and must agree.

    Args:
        dataset: Points to cluster
        partition: A valid partition of the dataset

    Returns:
        Q of the partition (unordered-pair form)
    """
    require_valid_partition(dataset, partition)
    unordered_total = 0.0
    ordered_total = 0.0
    for j in range(partition.k):
        unordered, ordered = _pairwise_forms(dataset.points[partition.labels == j])
        unordered_total += unordered
        ordered_total += ordered

    if abs(unordered_total - ordered_total) > 1e-9 * max(1.0, unordered_total):
        raise AnalysisError(
            "pairwise cost forms disagree",
            {"unordered": unordered_total, "ordered": ordered_total},
        )
    return unordered_total


# =============================================================================
# LLOYD'S ALGORITHM
# =============================================================================

def _centroids(points: np.ndarray, labels: np.ndarray, k: int) -> np.ndarray:
    """Cluster means via bincount (every cluster must be non-empty)."""
    counts = np.bincount(labels, minlength=k).astype(np.float64)
    sums = np.stack(
        [np.bincount(labels, weights=points[:, c], minlength=k) for c in range(points.shape[1])],
        axis=1,
    )
    return sums / counts[:, None]


def _sq_distances(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """n x k matrix of squared Euclidean distances, computed elementwise."""
    diff = points[:, None, :] - centers[None, :, :]
    return np.sum(diff * diff, axis=2)


def _labelled_cost(points: np.ndarray, labels: np.ndarray, centers: np.ndarray) -> float:
    diff = points - centers[labels]
    return float(np.sum(diff * diff))


def _repair_empty(points: np.ndarray, labels: np.ndarray, centers: np.ndarray, k: int) -> np.ndarray:
    """Give every empty cluster the point farthest from its assigned center.

    Only points from clusters with more than one member are moved, so the
    repair never empties another cluster.
    """
    counts = np.bincount(labels, minlength=k)
    empty = np.flatnonzero(counts == 0)
    if empty.size == 0:
        return labels
    labels = labels.copy()
    diff = points - centers[labels]
    dist = np.sum(diff * diff, axis=1)
    for e in empty:
        movable = counts[labels] > 1
        candidates = np.where(movable, dist, -np.inf)
        p = int(np.argmax(candidates))
        counts[labels[p]] -= 1
        labels[p] = e
        counts[e] += 1
        dist[p] = -np.inf
    return labels


def _init_labels(points: np.ndarray, k: int, init: InitMethod, rng: np.random.Generator) -> np.ndarray:
    """Initial assignment for one restart."""
    n = points.shape[0]
    if init is InitMethod.UNIFORM_RANDOM_ASSIGNMENT:
        labels = rng.integers(0, k, size=n)
        # seat one distinct point in every cluster
        labels[rng.permutation(n)[:k]] = np.arange(k)
        return labels.astype(np.int64)

    centers = np.empty((k, points.shape[1]))
    centers[0] = points[rng.integers(0, n)]
    dist_sq = _sq_distances(points, centers[:1])[:, 0]
    for i in range(1, k):
        total = dist_sq.sum()
        if total > 0:
            next_idx = rng.choice(n, p=dist_sq / total)
        else:
            next_idx = rng.integers(0, n)
        centers[i] = points[next_idx]
        dist_sq = np.minimum(dist_sq, _sq_distances(points, centers[i:i + 1])[:, 0])
    labels = np.argmin(_sq_distances(points, centers), axis=1)
    return _repair_empty(points, labels, centers, k)


def _run_restart(
    points: np.ndarray,
    lloyd_config: LloydConfig,
    rng: np.random.Generator
) -> Tuple[np.ndarray, float, int, bool, List[float]]:
    """One Lloyd run from a seeded initialization.

    Returns:
        Tuple of (labels, cost, iterations, converged, cost_history)
    """
    k = lloyd_config.k
    labels = _init_labels(points, k, lloyd_config.init, rng)
    centers = _centroids(points, labels, k)
    current = _labelled_cost(points, labels, centers)
    history = [current]
    converged = False
    iterations = 0

    for iterations in range(1, lloyd_config.max_iters + 1):
        new_labels = np.argmin(_sq_distances(points, centers), axis=1)
        new_labels = _repair_empty(points, new_labels, centers, k)
        if np.array_equal(new_labels, labels):
            converged = True
            break

        new_centers = _centroids(points, new_labels, k)
        new_cost = _labelled_cost(points, new_labels, new_centers)
        if new_cost > current * (1.0 + MONOTONE_RTOL) + 1e-300:
            raise CentricKitError(
                "Lloyd iteration increased the cost",
                {"iteration": iterations, "before": current, "after": new_cost},
            )

        improvement = current - new_cost
        labels, centers, current = new_labels, new_centers, new_cost
        history.append(current)
        if improvement <= lloyd_config.tol * current:
            converged = True
            break

    return labels, current, iterations, converged, history


def lloyd(dataset: Dataset, lloyd_config: LloydConfig, workers: Optional[int] = None) -> ClusteringResult:
    """Best-of-restarts Lloyd's algorithm.

    Restart r draws from its own generator derived from the master seed and r,
    so the result does not depend on how many workers run the restarts.

    Args:
        dataset: Points to cluster
        lloyd_config: k, restart count, iteration cap, tolerance, seed and init
        workers: Worker cap; defaults to the configured worker count

    Returns:
        ClusteringResult of the lowest-cost restart (lowest index on ties)
    """
    k = lloyd_config.k
    if k < 1:
        raise DataValidationError("k must be positive", {"k": k})
    if k > dataset.n:
        raise DataValidationError("k exceeds the number of points", {"k": k, "n": dataset.n})

    points = dataset.points
    rngs = spawn_rngs(lloyd_config.seed, lloyd_config.restarts)
    workers = config.worker_count() if workers is None else max(1, workers)

    if workers > 1 and lloyd_config.restarts > 1:
        with ThreadPoolExecutor(max_workers=min(workers, lloyd_config.restarts)) as executor:
            runs = list(executor.map(lambda rng: _run_restart(points, lloyd_config, rng), rngs))
    else:
        runs = [_run_restart(points, lloyd_config, rng) for rng in rngs]

    restart_costs = [run[1] for run in runs]
    for r, run in enumerate(runs):
        logger.debug(f"Restart {r}: cost={run[1]:.6g} iterations={run[2]} converged={run[3]}")

    best = int(np.argmin(restart_costs))
    labels, best_cost, iterations, converged, history = runs[best]
    logger.debug(f"Lloyd k={k}: best restart {best} of {len(runs)}, cost={best_cost:.6g}")

    return ClusteringResult(
        partition=Partition(labels=labels, k=k),
        cost=best_cost,
        iterations=iterations,
        converged=converged,
        restart_costs=restart_costs,
        cost_history=history,
        method="lloyd",
    )


# =============================================================================
# EXHAUSTIVE ORACLE
# =============================================================================

@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Number of partitions of n labelled points into k non-empty clusters."""
    if k < 0 or k > n:
        return 0
    row = [1] + [0] * k
    for m in range(1, n + 1):
        for j in range(min(m, k), 0, -1):
            row[j] = j * row[j] + row[j - 1]
        row[0] = 0
    return row[k]


def check_oracle_budget(n: int, k: int, budget: Optional[int] = None) -> int:
    """Raise unless enumerating all partitions of (n, k) fits the budget.

    Returns:
        The number of partitions to enumerate
    """
    budget = ORACLE_PARTITION_BUDGET if budget is None else budget
    count = stirling2(n, k)
    if count > budget:
        raise OracleBudgetError(
            "instance too large for ideal oracle",
            {"n": n, "k": k, "partitions": count, "budget": budget},
        )
    if count > budget // 2:
        logger.warning(f"Ideal oracle enumerating {count} partitions (budget {budget})")
    return count


@lru_cache(maxsize=16)
def partition_table(n: int, k: int) -> np.ndarray:
    """Every partition of n points into k non-empty clusters as canonical labels.

    Rows are label vectors in which clusters are numbered by first appearance,
    sorted lexicographically. The array is read-only and cached.
    """
    if k < 1 or k > n:
        raise DataValidationError("k must lie in [1, n]", {"n": n, "k": k})
    table = np.empty((stirling2(n, k), n), dtype=np.int8)
    for row, blocks in enumerate(set_partitions(range(n), k)):
        for label, block in enumerate(sorted(blocks, key=min)):
            table[row, block] = label
    table = table[np.lexsort(table.T[::-1])]
    table.setflags(write=False)
    return table


def _table_costs_chunk(points: np.ndarray, sq_norms: np.ndarray, chunk: np.ndarray, k: int) -> np.ndarray:
    """Q of each row of ``chunk`` using per-cluster sums and counts."""
    total = np.zeros(chunk.shape[0])
    for j in range(k):
        mask = (chunk == j).astype(np.float64)
        counts = mask.sum(axis=1)
        sums = mask @ points
        total += mask @ sq_norms - np.sum(sums * sums, axis=1) / counts
    return np.maximum(total, 0.0)


def table_costs(points: np.ndarray, table: np.ndarray, k: int, workers: int = 1) -> np.ndarray:
    """Q of every partition in ``table`` for the given points.

    Args:
        points: n x d coordinates
        table: m x n label rows, every row using all k labels
        k: Number of clusters
        workers: Threads used for chunks of rows

    Returns:
        Length-m vector of costs in row order
    """
    centered = points - points.mean(axis=0)
    sq_norms = np.sum(centered * centered, axis=1)
    chunks = [table[start:start + ORACLE_CHUNK_ROWS] for start in range(0, table.shape[0], ORACLE_CHUNK_ROWS)]
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=min(workers, len(chunks))) as executor:
            parts = list(executor.map(lambda c: _table_costs_chunk(centered, sq_norms, c, k), chunks))
    else:
        parts = [_table_costs_chunk(centered, sq_norms, c, k) for c in chunks]
    return np.concatenate(parts) if parts else np.zeros(0)


def kmeans_ideal(
    dataset: Dataset,
    k: int,
    budget: Optional[int] = None,
    workers: Optional[int] = None
) -> ClusteringResult:
    """Globally optimal partition by exhaustive enumeration.

    Args:
        dataset: Points to cluster
        k: Number of clusters
        budget: Maximum number of partitions to enumerate
        workers: Worker cap for the cost evaluation

    Returns:
        ClusteringResult with the minimal-cost partition (lexicographically
        smallest canonical labels on ties) and the gap to the second-best
        partition cost (None when only one partition exists)
    """
    if k < 1 or k > dataset.n:
        raise DataValidationError("k must lie in [1, n]", {"n": dataset.n, "k": k})
    count = check_oracle_budget(dataset.n, k, budget)
    workers = config.worker_count() if workers is None else max(1, workers)

    table = partition_table(dataset.n, k)
    costs = table_costs(dataset.points, table, k, workers)
    lowest = float(costs.min())
    # rows are lexicographically sorted, so the first near-minimal row wins ties
    best = int(np.flatnonzero(costs <= lowest + 1e-12 * max(1.0, lowest))[0])
    gap = None
    if count > 1:
        gap = max(0.0, float(np.delete(costs, best).min() - costs[best]))

    partition = Partition(labels=table[best].astype(np.int64), k=k)
    best_cost = cost(dataset, partition)
    logger.debug(f"Ideal oracle n={dataset.n} k={k}: {count} partitions, cost={best_cost:.6g}, gap={gap}")
    return ClusteringResult(
        partition=partition,
        cost=best_cost,
        iterations=0,
        converged=True,
        restart_costs=[best_cost],
        gap=gap,
        method="ideal",
    )


# =============================================================================
# CLUSTERING ERROR
# =============================================================================

def clustering_error(reference: Partition, candidate: Partition) -> int:
    """Minimum number of disagreeing labels over all cluster relabelings.

    Args:
        reference: Ground-truth partition
        candidate: Partition to score

    Returns:
        Number of points left unmatched by the optimal cluster assignment
    """
    if reference.n != candidate.n:
        raise DataValidationError(
            "partitions have different lengths",
            {"reference": reference.n, "candidate": candidate.n},
        )
    if reference.n == 0:
        return 0
    size = max(reference.k, candidate.k, int(reference.labels.max()) + 1, int(candidate.labels.max()) + 1)
    confusion = np.zeros((size, size), dtype=np.int64)
    np.add.at(confusion, (reference.labels, candidate.labels), 1)
    rows, cols = linear_sum_assignment(confusion, maximize=True)
    return int(reference.n - confusion[rows, cols].sum())
