"""Verification engine for cost differences under centric set transforms.

Given a reference partition {T, Z_2, ..., Z_k}, a subset P of T and an
alternative partition {K_1, ..., K_k}, h(lambda) is the cost of the reference
minus the cost of the alternative after P is contracted by lambda. This module
evaluates h directly from costs (``h_lambda``), independently through its
closed-form quadratic decomposition (``h_decompose``), and runs end-to-end
preservation checks against the exhaustive oracle.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from centric_kit.config import (
    EXHAUSTIVE_SPLIT_MAX_K,
    EXHAUSTIVE_SPLIT_MAX_N,
    SPLIT_SAMPLE_COUNT,
    TIE_GAP,
    config,
)
from centric_kit.core.clusters import cluster_of, require_valid_partition, within_ss
from centric_kit.core.exceptions import AnalysisError, DataValidationError
from centric_kit.core.logging_config import get_logger
from centric_kit.core.seeding import make_rng
from centric_kit.core.types import (
    AlternativeSplit,
    ClusteringResult,
    CollapseVerdict,
    Dataset,
    EndpointScan,
    HLambdaAnalysis,
    Partition,
    QuadraticCertificate,
    SuiteConfig,
    SuiteSummary,
    TheoremVerdict,
    VerdictKind,
    as_index_array,
)
from centric_kit.services.kmeans import (
    cost,
    kmeans_ideal,
    partition_table,
    table_costs,
)
from centric_kit.services.transforms import contract_points, gamma_plus_plus, gamma_star

logger = get_logger(__name__)

QUAD_FIT_LAMBDAS = (0.0, 0.5, 1.0)
QUAD_PROBE_LAMBDA = 0.3


def relative_error(value: float, reference: float) -> float:
    """|value - reference| relative to the larger magnitude, floored at 1."""
    return abs(value - reference) / max(1.0, abs(value), abs(reference))


def merge_cost_increase(n_a: int, mu_a: np.ndarray, n_b: int, mu_b: np.ndarray) -> float:
    """Increase of Q when two disjoint groups are merged into one cluster.

    Equals ||mu_a - mu_b||^2 / (1/n_a + 1/n_b); zero when either group is empty.
    """
    if n_a == 0 or n_b == 0:
        return 0.0
    diff = np.asarray(mu_a, dtype=np.float64) - np.asarray(mu_b, dtype=np.float64)
    return float(np.sum(diff * diff)) / (1.0 / n_a + 1.0 / n_b)


# =============================================================================
# SPLITS
# =============================================================================

def reference_parts(reference: Partition, subset: Sequence[int] | np.ndarray) -> Tuple[int, np.ndarray, np.ndarray, List[int]]:
    """Locate P inside the reference partition.

    Returns:
        Tuple of (T's label, P indices, Y = T minus P indices, labels of the
        other clusters Z_2..Z_k in increasing order)
    """
    try:
        t = cluster_of(reference, subset)
    except DataValidationError as e:
        raise AnalysisError("P must lie inside one reference cluster", {"reason": e.message})
    p = as_index_array(subset)
    y = np.setdiff1d(reference.members(t), p)
    others = [j for j in range(reference.k) if j != t]
    return t, p, y, others


def split_from_labels(
    reference: Partition,
    subset: Sequence[int] | np.ndarray,
    alternative: Sequence[int] | np.ndarray
) -> AlternativeSplit:
    """Express an alternative labelling as A_i, B_i and C_ij parts.

    Args:
        reference: Reference partition {T, Z_2..Z_k}
        subset: The transformed set P inside T
        alternative: Label vector of the alternative partition

    Returns:
        The corresponding AlternativeSplit
    """
    alt = np.asarray(alternative, dtype=np.int64)
    if alt.shape[0] != reference.n:
        raise AnalysisError("alternative labels do not match the reference length", {"alternative": alt.shape[0], "reference": reference.n})
    _, p, y, others = reference_parts(reference, subset)
    k_alt = int(alt.max()) + 1
    z_sets = [reference.members(j) for j in others]
    a = [p[alt[p] == i] for i in range(k_alt)]
    b = [y[alt[y] == i] for i in range(k_alt)]
    c = [[z[alt[z] == i] for z in z_sets] for i in range(k_alt)]
    return AlternativeSplit(a=a, b=b, c=c)


def _validate_split(reference: Partition, subset: Sequence[int] | np.ndarray, split: AlternativeSplit) -> Tuple[np.ndarray, np.ndarray, List[np.ndarray]]:
    """Check that the split partitions P, Y and every Z_j."""
    _, p, y, others = reference_parts(reference, subset)
    z_sets = [reference.members(j) for j in others]

    def covers(parts: List[np.ndarray], target: np.ndarray, name: str) -> None:
        joined = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
        if joined.size != np.unique(joined).size or not np.array_equal(np.sort(joined), np.sort(target)):
            raise AnalysisError(f"inconsistent split: parts do not partition {name}")

    covers(list(split.a), p, "P")
    covers(list(split.b), y, "Y")
    if split.c and len(split.c[0]) != len(z_sets):
        raise AnalysisError("inconsistent split: wrong number of Z parts", {"expected": len(z_sets), "got": len(split.c[0])})
    for j, z in enumerate(z_sets):
        covers([row[j] for row in split.c], z, f"Z_{j + 2}")
    return p, y, z_sets


def enumerate_splits(reference: Partition, subset: Sequence[int] | np.ndarray, k: Optional[int] = None) -> Iterator[AlternativeSplit]:
    """Every alternative partition into k non-empty clusters, as splits.

    Limited to small instances; larger ones should use ``sample_splits``.
    """
    k = reference.k if k is None else k
    if reference.n > EXHAUSTIVE_SPLIT_MAX_N or k > EXHAUSTIVE_SPLIT_MAX_K:
        raise AnalysisError(
            "instance too large for exhaustive split enumeration",
            {"n": reference.n, "k": k, "max_n": EXHAUSTIVE_SPLIT_MAX_N, "max_k": EXHAUSTIVE_SPLIT_MAX_K},
        )
    for row in partition_table(reference.n, k):
        yield split_from_labels(reference, subset, row)


def sample_splits(
    reference: Partition,
    subset: Sequence[int] | np.ndarray,
    k: Optional[int] = None,
    count: int = SPLIT_SAMPLE_COUNT,
    seed: int = 0
) -> List[AlternativeSplit]:
    """Random alternative partitions into k non-empty clusters."""
    k = reference.k if k is None else k
    if k > reference.n:
        raise AnalysisError("k exceeds the number of points", {"k": k, "n": reference.n})
    rng = make_rng(seed)
    splits = []
    for _ in range(count):
        labels = rng.integers(0, k, size=reference.n)
        labels[rng.permutation(reference.n)[:k]] = np.arange(k)
        splits.append(split_from_labels(reference, subset, labels))
    return splits


# =============================================================================
# h(lambda)
# =============================================================================

def _check_limit_lambda(lam: float) -> None:
    if not 0.0 <= lam <= 1.0:
        raise AnalysisError("lambda must lie in [0, 1]", {"lambda": lam})


def h_lambda(
    dataset: Dataset,
    reference: Partition,
    split: AlternativeSplit,
    subset: Sequence[int] | np.ndarray,
    lam: float
) -> float:
    """Q of the reference minus Q of the alternative after contracting P.

    lambda = 0 is accepted as the limit in which every point of P sits at
    mu(P).

    Args:
        dataset: Original points
        reference: Reference partition {T, Z_2..Z_k}
        split: Alternative partition relative to the reference
        subset: P, inside T
        lam: Contraction factor in [0, 1]

    Returns:
        h(lambda)
    """
    _check_limit_lambda(lam)
    require_valid_partition(dataset, reference)
    p, _, _ = _validate_split(reference, subset, split)
    moved = dataset.with_points(contract_points(dataset.points, p, lam))
    alternative = Partition(labels=split.to_labels(dataset.n), k=split.k)
    return cost(moved, reference) - cost(moved, alternative)


def h_decompose(
    dataset: Dataset,
    reference: Partition,
    split: AlternativeSplit,
    subset: Sequence[int] | np.ndarray
) -> HLambdaAnalysis:
    """Closed-form quadratic decomposition of h(lambda).

    With N_i = |K_i| and v_i = mu(A_i) - mu(P), the coefficient at lambda^2 is
    sum_i (|A_i| - |A_i| (|B_i| + sum_j |C_ij|) / N_i) * ||v_i||^2. The linear
    coefficient collects the cross constants c_{A_i B_i P} and c_{A_i C_ij P};
    the constant term is c_h minus the mu(P)-to-group terms. Empty groups
    contribute nothing.
    """
    require_valid_partition(dataset, reference)
    p, y, z_sets = _validate_split(reference, subset, split)
    x = dataset.points
    mu_p = x[p].mean(axis=0)

    def mean(idx: np.ndarray) -> Optional[np.ndarray]:
        return x[idx].mean(axis=0) if idx.size else None

    def sq(vec: np.ndarray) -> float:
        return float(np.sum(vec * vec))

    c_h = within_ss(x[y]) + sum(within_ss(x[z]) for z in z_sets)
    if y.size:
        c_h += merge_cost_increase(p.size, mu_p, y.size, mean(y))

    quad = 0.0
    lin = 0.0
    const_moved = 0.0
    strictly_convex = False
    v_a: List[np.ndarray] = []
    c_abp: List[Optional[float]] = []
    c_bp: List[Optional[float]] = []
    c_acp: List[List[Optional[float]]] = []
    c_cp: List[List[Optional[float]]] = []

    for i in range(split.k):
        a_i, b_i, c_i = split.a[i], split.b[i], split.c[i]
        n_a = a_i.size
        others_size = b_i.size + sum(part.size for part in c_i)
        n_i = n_a + others_size

        # fixed groups of K_i: B_i then the C_ij
        groups = [(part.size, mean(part)) for part in [b_i, *c_i] if part.size]
        c_h -= within_ss(x[b_i]) + sum(within_ss(x[part]) for part in c_i)
        for g in range(len(groups)):
            for h in range(g + 1, len(groups)):
                n_g, m_g = groups[g]
                n_h, m_h = groups[h]
                c_h -= n_g * n_h * sq(m_g - m_h) / n_i

        v_i = mean(a_i) - mu_p if n_a else np.zeros_like(mu_p)
        v_a.append(v_i)
        quad += (n_a - n_a * others_size / n_i) * sq(v_i)
        if n_a and sq(v_i) > 0.0:
            strictly_convex = True

        mu_b = mean(b_i)
        c_bp.append(sq(mu_p - mu_b) if mu_b is not None else None)
        c_abp.append(2.0 * float(np.dot(v_i, mu_p - mu_b)) if mu_b is not None and n_a else None)
        row_acp: List[Optional[float]] = []
        row_cp: List[Optional[float]] = []
        for part in c_i:
            mu_c = mean(part)
            row_cp.append(sq(mu_p - mu_c) if mu_c is not None else None)
            row_acp.append(2.0 * float(np.dot(v_i, mu_p - mu_c)) if mu_c is not None and n_a else None)
        c_acp.append(row_acp)
        c_cp.append(row_cp)

        if n_a:
            weight = n_a / n_i
            if mu_b is not None:
                lin -= weight * b_i.size * c_abp[-1]
                const_moved += weight * b_i.size * c_bp[-1]
            for part, acp, cp in zip(c_i, row_acp, row_cp):
                if part.size:
                    lin -= weight * part.size * acp
                    const_moved += weight * part.size * cp

    return HLambdaAnalysis(
        quad_coeff=quad,
        lin_coeff=lin,
        const_coeff=c_h - const_moved,
        c_h=c_h,
        v_a=v_a,
        cross_constants={"c_ABP": c_abp, "c_BP": c_bp, "c_ACP": c_acp, "c_CP": c_cp},
        strictly_convex=strictly_convex,
    )


def fit_quadratic(values: Sequence[float]) -> Tuple[float, float, float]:
    """Exact quadratic through h(0), h(1/2), h(1).

    Returns:
        Tuple of (quad, lin, const)
    """
    h0, h_half, h1 = values
    quad = 2.0 * h1 + 2.0 * h0 - 4.0 * h_half
    lin = h1 - h0 - quad
    return quad, lin, h0


def certify_quadratic(
    dataset: Dataset,
    reference: Partition,
    split: AlternativeSplit,
    subset: Sequence[int] | np.ndarray,
    probe: float = QUAD_PROBE_LAMBDA
) -> QuadraticCertificate:
    """Compare a 3-point fit of ``h_lambda`` with a fourth sample and the closed form."""
    samples = [h_lambda(dataset, reference, split, subset, lam) for lam in QUAD_FIT_LAMBDAS]
    quad, lin, const = fit_quadratic(samples)
    probe_value = h_lambda(dataset, reference, split, subset, probe)
    predicted = quad * probe * probe + lin * probe + const
    analysis = h_decompose(dataset, reference, split, subset)
    return QuadraticCertificate(
        fit_coeffs=[quad, lin, const],
        closed_form_coeffs=[analysis.quad_coeff, analysis.lin_coeff, analysis.const_coeff],
        probe_lambda=probe,
        probe_value=probe_value,
        probe_predicted=predicted,
        probe_rel_error=relative_error(predicted, probe_value),
        quad_rel_error=relative_error(analysis.quad_coeff, quad),
    )


def endpoint_scan(
    dataset: Dataset,
    reference: Partition,
    subset: Sequence[int] | np.ndarray,
    k: Optional[int] = None,
    workers: int = 1
) -> EndpointScan:
    """h(0) and h(1) for every alternative partition into k clusters.

    All alternatives are costed at once from the oracle's partition table,
    so the scan is subject to the same size limits as ``enumerate_splits``.
    """
    k = reference.k if k is None else k
    if reference.n > EXHAUSTIVE_SPLIT_MAX_N or k > EXHAUSTIVE_SPLIT_MAX_K:
        raise AnalysisError(
            "instance too large for exhaustive split enumeration",
            {"n": reference.n, "k": k, "max_n": EXHAUSTIVE_SPLIT_MAX_N, "max_k": EXHAUSTIVE_SPLIT_MAX_K},
        )
    require_valid_partition(dataset, reference)
    _, p, _, _ = reference_parts(reference, subset)
    table = partition_table(dataset.n, k)
    values = []
    for lam in (0.0, 1.0):
        moved = dataset.with_points(contract_points(dataset.points, p, lam))
        values.append(cost(moved, reference) - table_costs(moved.points, table, k, workers))
    return EndpointScan(h0=values[0], h1=values[1])


# =============================================================================
# ORACLE CHECKS
# =============================================================================

def _compare_optima(
    pre: ClusteringResult,
    post: ClusteringResult,
    check: str,
    lam: float,
    subset_size: int
) -> TheoremVerdict:
    """Turn two oracle results into a verdict."""
    tie = any(gap is not None and gap < TIE_GAP for gap in (pre.gap, post.gap))
    if tie:
        verdict = VerdictKind.TIE_SKIPPED
    elif np.array_equal(pre.partition.canonical_labels(), post.partition.canonical_labels()):
        verdict = VerdictKind.PRESERVED
    else:
        verdict = VerdictKind.VIOLATED
    result = TheoremVerdict(
        verdict=verdict,
        check=check,
        pre_cost=pre.cost,
        post_cost=post.cost,
        gap_pre=pre.gap,
        gap_post=post.gap,
        lambda_=lam,
        subset_size=subset_size,
        pre_labels=pre.partition.labels.tolist(),
        post_labels=post.partition.labels.tolist(),
    )
    if verdict is VerdictKind.TIE_SKIPPED:
        logger.warning(f"{check}: optimality gap below {TIE_GAP:g} (pre={pre.gap}, post={post.gap}); skipped")
    elif verdict is VerdictKind.VIOLATED:
        logger.error(f"{check}: ideal partition changed (pre cost {pre.cost:.12g}, post cost {post.cost:.12g})")
    return result


def _theorem3_from_optimum(
    dataset: Dataset,
    pre: ClusteringResult,
    subset: np.ndarray,
    lam: float,
    budget: Optional[int],
    workers: int
) -> TheoremVerdict:
    try:
        cluster = cluster_of(pre.partition, subset)
    except DataValidationError as e:
        raise AnalysisError("P spans several clusters of the ideal partition", {"reason": e.message})
    outcome = gamma_plus_plus(dataset, pre.partition, cluster, subset, lam)
    post = kmeans_ideal(outcome.dataset, pre.partition.k, budget, workers)
    return _compare_optima(pre, post, "gamma_plus_plus", lam, int(subset.size))


def verify_theorem3(
    dataset: Dataset,
    k: int,
    subset: Sequence[int] | np.ndarray,
    lam: float,
    budget: Optional[int] = None,
    workers: Optional[int] = None
) -> TheoremVerdict:
    """Check that a Gamma++ transform keeps the ideal partition.

    Args:
        dataset: Points within the oracle budget
        k: Number of clusters
        subset: P, which must lie inside one cluster of the ideal partition
        lam: Contraction factor in (0, 1]
        budget: Oracle partition budget
        workers: Worker cap for the oracle

    Returns:
        Verdict: preserved, tie_skipped or violated
    """
    workers = config.worker_count() if workers is None else workers
    pre = kmeans_ideal(dataset, k, budget, workers)
    return _theorem3_from_optimum(dataset, pre, as_index_array(subset), lam, budget, workers)


def _centric_from_optimum(
    dataset: Dataset,
    pre: ClusteringResult,
    cluster: int,
    lam: float,
    budget: Optional[int],
    workers: int
) -> TheoremVerdict:
    moved = gamma_star(dataset, pre.partition, cluster, lam)
    post = kmeans_ideal(moved, pre.partition.k, budget, workers)
    return _compare_optima(pre, post, "gamma_star", lam, int(np.sum(pre.partition.labels == cluster)))


def verify_centric_consistency(
    dataset: Dataset,
    k: int,
    cluster: int,
    lam: float,
    budget: Optional[int] = None,
    workers: Optional[int] = None
) -> TheoremVerdict:
    """Check that a Gamma* transform of one ideal cluster keeps the ideal partition.

    ``cluster`` indexes the ideal partition's canonical labels.
    """
    workers = config.worker_count() if workers is None else workers
    pre = kmeans_ideal(dataset, k, budget, workers)
    return _centric_from_optimum(dataset, pre, cluster, lam, budget, workers)


def verify_lambda0_collapse(
    dataset: Dataset,
    reference: Partition,
    split: AlternativeSplit,
    subset: Sequence[int] | np.ndarray
) -> CollapseVerdict:
    """Certify h(0) <= 0 through the collapsed rearrangement K''.

    At lambda = 0 all of P sits at mu(P). K'' moves that whole point mass to
    the alternative cluster whose center is nearest to mu(P), which cannot
    raise the cost of K'(0).
    """
    require_valid_partition(dataset, reference)
    p, _, _ = _validate_split(reference, subset, split)
    collapsed = contract_points(dataset.points, p, 0.0)
    labels = split.to_labels(dataset.n)

    q_alternative = sum(within_ss(collapsed[labels == i]) for i in range(split.k))
    mu_p = collapsed[p[0]]
    distances = [float(np.sum((collapsed[labels == i].mean(axis=0) - mu_p) ** 2)) for i in range(split.k)]
    target = int(np.argmin(distances))

    moved_labels = labels.copy()
    moved_labels[p] = target
    # K''_i may be empty once P has left it
    q_collapsed = sum(within_ss(collapsed[moved_labels == i]) for i in range(split.k))

    h0 = h_lambda(dataset, reference, split, subset, 0.0)
    scale = max(1.0, q_alternative)
    passed = q_collapsed <= q_alternative + TIE_GAP * scale and h0 <= TIE_GAP * scale
    if not passed:
        logger.error(f"Collapse check failed: h(0)={h0:.3g}, Q(K'')={q_collapsed:.12g}, Q(K')={q_alternative:.12g}")
    return CollapseVerdict(
        passed=passed,
        h0=h0,
        q_alternative=float(q_alternative),
        q_collapsed=float(q_collapsed),
        target=target,
    )


# =============================================================================
# RANDOMIZED SUITE
# =============================================================================

def _suite_instance(suite: SuiteConfig, index: int) -> List[TheoremVerdict]:
    """Draw and check one suite instance; single-threaded."""
    rng = make_rng(suite.seed, index)
    k = int(suite.ks[rng.integers(0, len(suite.ks))])
    dim = int(suite.dims[rng.integers(0, len(suite.dims))])
    lam = float(suite.lambdas[rng.integers(0, len(suite.lambdas))])
    dataset = Dataset(points=rng.random((suite.n, dim)))

    pre = kmeans_ideal(dataset, k, workers=1)
    cluster = int(rng.integers(0, k))
    members = pre.partition.members(cluster)

    verdicts = []
    if suite.check in ("gamma_plus_plus", "both"):
        size = min(int(rng.integers(suite.subset_min, suite.subset_max + 1)), members.size)
        subset = np.sort(rng.choice(members, size=size, replace=False))
        verdicts.append(_theorem3_from_optimum(dataset, pre, subset, lam, None, 1))
    if suite.check in ("gamma_star", "both"):
        verdicts.append(_centric_from_optimum(dataset, pre, cluster, lam, None, 1))
    return [v.model_copy(update={"instance": index}) for v in verdicts]


def run_random_suite(suite: SuiteConfig, workers: Optional[int] = None) -> SuiteSummary:
    """Run oracle preservation checks over seeded random instances.

    Instance i draws everything from a generator derived from (seed, i), so
    the summary is the same for any number of workers.

    Args:
        suite: Instance family and checks to run
        workers: Worker cap; defaults to the configured worker count

    Returns:
        SuiteSummary with verdict counts and per-instance verdicts in order
    """
    workers = config.worker_count() if workers is None else max(1, workers)
    indices = range(suite.instances)
    if workers > 1 and suite.instances > 1:
        with ThreadPoolExecutor(max_workers=min(workers, suite.instances)) as executor:
            results = list(executor.map(lambda i: _suite_instance(suite, i), indices))
    else:
        results = [_suite_instance(suite, i) for i in indices]

    verdicts = [v for batch in results for v in batch]
    summary = SuiteSummary(
        preserved=sum(v.verdict is VerdictKind.PRESERVED for v in verdicts),
        tie_skipped=sum(v.verdict is VerdictKind.TIE_SKIPPED for v in verdicts),
        violated=sum(v.verdict is VerdictKind.VIOLATED for v in verdicts),
        verdicts=verdicts,
    )
    logger.info(
        f"Random suite: {suite.instances} instances, preserved={summary.preserved} "
        f"tie_skipped={summary.tie_skipped} violated={summary.violated}"
    )
    return summary
