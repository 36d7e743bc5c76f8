"""``experiment``: Gamma vs Gamma++ stability experiment with Lloyd's algorithm."""

import argparse

from centric_kit.cli.common import EXIT_OK, UsageError, sibling_path
from centric_kit.config import DEFAULT_REPETITIONS, FULL_SCALE_N
from centric_kit.core.io import read_model, write_frame_csv, write_json
from centric_kit.core.logging_config import log_info, log_success
from centric_kit.core.types import ExperimentConfig, GenKind
from centric_kit.services.experiment import default_experiment_config, records_frame, run_experiment


def add_parser(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    """Register the ``experiment`` subcommand."""
    parser = subparsers.add_parser(
        "experiment",
        parents=[parent],
        help="Compare Lloyd errors after an angular Gamma and after Gamma++",
        description="Without --config the two-squares experiment runs at desk scale (2000 points). "
                    "With --out, per-run records go to <stem>.records.csv and the wall time to <stem>.timing.json.",
    )
    parser.add_argument("--full-scale", action="store_true", help="Use 10000 points, also with --config")
    parser.add_argument("--repetitions", type=int, default=None, help=f"Repetitions (default {DEFAULT_REPETITIONS})")
    parser.set_defaults(handler=run)


def build_experiment(args: argparse.Namespace) -> ExperimentConfig:
    """ExperimentConfig from --config, or the default experiment, with overrides.

    Raises:
        UsageError: If --full-scale is combined with a non two-squares generator
    """
    if args.config is None:
        return default_experiment_config(
            full_scale=args.full_scale,
            repetitions=DEFAULT_REPETITIONS if args.repetitions is None else args.repetitions,
            seed=args.seed or 0,
        )
    cfg = read_model(args.config, ExperimentConfig)
    updates = {}
    if args.repetitions is not None:
        updates["repetitions"] = args.repetitions
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.full_scale:
        if cfg.generator.kind is not GenKind.TWO_SQUARES_3D:
            raise UsageError("--full-scale only applies to a two_squares_3d generator")
        updates["generator"] = {**cfg.generator.model_dump(by_alias=True), "n": FULL_SCALE_N}
    # model_validate re-runs the field constraints that model_copy skips
    return ExperimentConfig.model_validate({**cfg.model_dump(by_alias=True), **updates})


def run(args: argparse.Namespace) -> int:
    """Run the experiment and write the report, records and timing."""
    cfg = build_experiment(args)
    report = run_experiment(cfg)
    write_json(report.model_dump(mode="json", by_alias=True), args.out)

    if args.out is not None:
        write_frame_csv(records_frame(report.records), sibling_path(args.out, ".records.csv"))
        write_json({"wall_time_seconds": report.wall_time_seconds}, sibling_path(args.out, ".timing.json"))

    for arm, summary in report.arms.items():
        log_info(f"{arm}: {summary.mean_errors:.2f} errors on average ({summary.mean_error_rate:.4%})")
    log_success(f"Experiment done: {cfg.repetitions} repetitions of {report.n_points} points")
    return EXIT_OK
