"""``plot``: SVG scatter plot of a dataset colored by cluster."""

import argparse
from pathlib import Path

from centric_kit.cli.common import EXIT_OK, UsageError, load_labelled, load_partition
from centric_kit.config import PLOT_AZIMUTH_DEG, PLOT_ELEVATION_DEG
from centric_kit.core.logging_config import log_success
from centric_kit.services.plotting import plot_dataset


def add_parser(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    """Register the ``plot`` subcommand."""
    parser = subparsers.add_parser(
        "plot",
        parents=[parent],
        help="Draw a dataset as an SVG scatter plot",
        description="Colors come from --labels, else from the dataset's label column. --out is required.",
    )
    parser.add_argument("dataset", type=Path, help="Dataset CSV")
    parser.add_argument("--labels", type=Path, default=None, help="Partition CSV to color by")
    parser.add_argument("--no-labels", action="store_true", help="Draw every point in one color")
    parser.add_argument("--columns", type=int, nargs="+", default=None, help="0-based coordinates to draw")
    parser.add_argument("--azimuth", type=float, default=PLOT_AZIMUTH_DEG, help="3D view azimuth in degrees")
    parser.add_argument("--elevation", type=float, default=PLOT_ELEVATION_DEG, help="3D view elevation in degrees")
    parser.add_argument("--title", default=None, help="Figure title")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """Write the plot to --out."""
    if args.out is None:
        raise UsageError("plot needs --out")
    if args.no_labels and args.labels is not None:
        raise UsageError("--labels and --no-labels are exclusive")

    dataset, partition = load_labelled(args.dataset)
    if args.labels is not None:
        partition = load_partition(args.labels, dataset.n)
    if args.no_labels:
        partition = None

    plot_dataset(
        dataset,
        args.out,
        partition=partition,
        columns=args.columns,
        azimuth=args.azimuth,
        elevation=args.elevation,
        title=args.title,
    )
    log_success(f"Plot written to {args.out}")
    return EXIT_OK
