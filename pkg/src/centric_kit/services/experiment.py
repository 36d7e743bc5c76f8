"""Gamma vs Gamma++ stability experiment on labelled synthetic data.

Each repetition generates a dataset, optionally spreads it with a
pre-transform, then clusters two perturbed copies with Lloyd's algorithm:
one moved by an angular Kleinberg Gamma-transformation of a single cluster,
one moved by a Gamma++ contraction of a random fragment of that cluster.
Errors are counted against the generating labels.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional

import pandas as pd

from centric_kit.config import (
    DEFAULT_REPETITIONS,
    DESK_SCALE_N,
    FULL_SCALE_N,
    GAMMA_FACTOR,
    GAMMA_PLUS_PLUS_LAMBDA,
    MAX_SUBSET_FRACTION,
    PRE_TRANSFORM_FACTOR,
    config,
)
from centric_kit.core.exceptions import ConfigurationError
from centric_kit.core.logging_config import get_logger
from centric_kit.core.seeding import derive_seed, make_rng
from centric_kit.core.types import (
    ArmSummary,
    Dataset,
    ExperimentConfig,
    ExperimentReport,
    GenKind,
    GenSpec,
    LloydConfig,
    Partition,
    RunRecord,
    SubsetMode,
    SubsetSampler,
    TransformKind,
    TransformSpec,
)
from centric_kit.services.datagen import DIAGONAL_AXIS, SHARED_CORNER, generate
from centric_kit.services.kmeans import clustering_error, lloyd
from centric_kit.services.transforms import apply_transform, check_gamma_on_points

logger = get_logger(__name__)

ARMS = ("gamma", "gamma_plus_plus")


def default_experiment_config(
    full_scale: bool = False,
    repetitions: int = DEFAULT_REPETITIONS,
    seed: int = 0
) -> ExperimentConfig:
    """Two-squares experiment with the standard factors.

    Args:
        full_scale: Use 10000 points instead of the desk-scale 2000
        repetitions: Number of repetitions
        seed: Master seed

    Returns:
        ExperimentConfig ready for ``run_experiment``
    """
    axis = DIAGONAL_AXIS.tolist()
    center = SHARED_CORNER.tolist()
    return ExperimentConfig(
        generator=GenSpec(
            kind=GenKind.TWO_SQUARES_3D, n=FULL_SCALE_N if full_scale else DESK_SCALE_N, edge=1.0, mirrored=True, seed=seed
        ),
        pre_transform=TransformSpec(
            kind=TransformKind.ANGULAR, factor=PRE_TRANSFORM_FACTOR, axis=axis, center=center, two_sided=True
        ),
        gamma=TransformSpec(
            kind=TransformKind.ANGULAR, cluster=0, factor=GAMMA_FACTOR, axis=axis, center=center, two_sided=True
        ),
        gamma_plus_plus=TransformSpec(
            kind=TransformKind.GAMMA_PLUS_PLUS,
            cluster=0,
            lambda_=GAMMA_PLUS_PLUS_LAMBDA,
            sample=SubsetSampler(cluster=0, fraction=MAX_SUBSET_FRACTION, mode=SubsetMode.UNIFORM),
        ),
        vary_fraction=True,
        lloyd=LloydConfig(k=2, seed=seed),
        repetitions=repetitions,
        seed=seed,
    )


def _cluster_arm(
    arm: str,
    repetition: int,
    dataset: Dataset,
    labels: Partition,
    lloyd_config: LloydConfig,
    subset_size: int,
    data_seed: int,
    subset_seed: Optional[int] = None,
    subset_fraction: Optional[float] = None,
    kleinberg_valid: Optional[bool] = None
) -> RunRecord:
    """Cluster one perturbed dataset and score it against the generating labels."""
    result = lloyd(dataset, lloyd_config, workers=1)
    errors = clustering_error(labels, result.partition)
    return RunRecord(
        repetition=repetition,
        arm=arm,
        subset_size=subset_size,
        data_seed=data_seed,
        lloyd_seed=lloyd_config.seed,
        subset_seed=subset_seed,
        subset_fraction=subset_fraction,
        errors=errors,
        error_rate=errors / dataset.n,
        cost=result.cost,
        kleinberg_valid=kleinberg_valid,
    )


def _run_repetition(cfg: ExperimentConfig, base: Optional[tuple], repetition: int) -> List[RunRecord]:
    """Both arms of one repetition; every random choice derives from (seed, repetition).

    Raises:
        ConfigurationError: If the gamma arm is not a Gamma-transformation of the labels
    """
    if base is None:
        data_seed = derive_seed(cfg.seed, repetition, 0)
        dataset, labels = generate(cfg.generator.model_copy(update={"seed": data_seed}))
    else:
        data_seed = cfg.generator.seed
        dataset, labels = base

    if cfg.pre_transform is not None:
        dataset = apply_transform(dataset, labels, cfg.pre_transform).dataset

    records = []

    gamma_data = apply_transform(dataset, labels, cfg.gamma)
    check = check_gamma_on_points(dataset, gamma_data.dataset, labels)
    if not check.valid:
        raise ConfigurationError(
            "gamma arm is not a Gamma-transformation of the generating labels",
            {"repetition": repetition, "violations": check.violation_count},
        )
    records.append(_cluster_arm(
        "gamma",
        repetition,
        gamma_data.dataset,
        labels,
        cfg.lloyd.model_copy(update={"seed": derive_seed(cfg.seed, repetition, 1)}),
        int(gamma_data.metadata["subset_size"]),
        data_seed,
        kleinberg_valid=check.valid,
    ))

    sampler = cfg.gamma_plus_plus.sample
    fraction = sampler.fraction
    if cfg.vary_fraction:
        fraction = (1.0 - make_rng(cfg.seed, repetition, 2).random()) * sampler.fraction
    subset_seed = derive_seed(cfg.seed, repetition, 3)
    spec = cfg.gamma_plus_plus.model_copy(update={
        "sample": sampler.model_copy(update={"fraction": fraction, "seed": subset_seed})
    })
    gpp_data = apply_transform(dataset, labels, spec)
    records.append(_cluster_arm(
        "gamma_plus_plus",
        repetition,
        gpp_data.dataset,
        labels,
        cfg.lloyd.model_copy(update={"seed": derive_seed(cfg.seed, repetition, 4)}),
        int(gpp_data.metadata["subset_size"]),
        data_seed,
        subset_seed,
        fraction,
    ))

    logger.debug(
        f"Repetition {repetition}: gamma errors={records[0].errors}, "
        f"gamma_plus_plus errors={records[1].errors} (|P|={records[1].subset_size})"
    )
    return records


def records_frame(records: List[RunRecord]) -> pd.DataFrame:
    """Per-run records as a table, one row per (repetition, arm)."""
    columns = list(RunRecord.model_fields)
    return pd.DataFrame([r.model_dump() for r in records], columns=columns)


def summarize_records(frame: pd.DataFrame) -> Dict[str, ArmSummary]:
    """Per-arm aggregates, recomputable from the per-run table alone.

    Args:
        frame: Table with at least ``arm``, ``errors`` and ``error_rate``

    Returns:
        Mapping from arm name to its summary
    """
    summaries = {}
    for arm, group in frame.groupby("arm", sort=True):
        runs = len(group)
        std = float(group["error_rate"].std(ddof=1)) if runs > 1 else 0.0
        counts = group["errors"].value_counts().sort_index()
        summaries[str(arm)] = ArmSummary(
            runs=runs,
            mean_errors=float(group["errors"].mean()),
            mean_error_rate=float(group["error_rate"].mean()),
            std_error_rate=std,
            max_errors=int(group["errors"].max()),
            histogram={str(int(count)): int(freq) for count, freq in counts.items()},
        )
    return summaries


def run_experiment(cfg: ExperimentConfig, workers: Optional[int] = None) -> ExperimentReport:
    """Run every repetition of both arms and aggregate the errors.

    Repetitions may run concurrently; records are sorted by repetition and
    arm before aggregation, so the report does not depend on the worker count.

    Args:
        cfg: Experiment configuration
        workers: Worker cap; defaults to the configured worker count

    Returns:
        ExperimentReport (wall time is attached but not serialized)
    """
    workers = config.worker_count() if workers is None else max(1, workers)
    started = time.perf_counter()
    base = None if cfg.regenerate else generate(cfg.generator)
    n_points = cfg.generator.total_points

    logger.info(f"Experiment: {cfg.repetitions} repetitions, n={n_points}, workers={workers}")
    reps = range(cfg.repetitions)
    if workers > 1 and cfg.repetitions > 1:
        with ThreadPoolExecutor(max_workers=min(workers, cfg.repetitions)) as executor:
            batches = list(executor.map(lambda r: _run_repetition(cfg, base, r), reps))
    else:
        batches = [_run_repetition(cfg, base, r) for r in reps]

    records = sorted((rec for batch in batches for rec in batch), key=lambda rec: (rec.repetition, ARMS.index(rec.arm)))
    arms = summarize_records(records_frame(records))
    elapsed = time.perf_counter() - started

    for arm, summary in arms.items():
        logger.info(
            f"Arm {arm}: mean error rate {summary.mean_error_rate:.4%} "
            f"(std {summary.std_error_rate:.4%}, max {summary.max_errors} errors)"
        )
    logger.info(f"Experiment finished in {elapsed:.1f}s")

    return ExperimentReport(
        config=cfg,
        n_points=n_points,
        records=records,
        arms=arms,
        wall_time_seconds=elapsed,
    )
