"""``cluster``: run Lloyd's algorithm or the exhaustive oracle on a dataset CSV."""

import argparse
from pathlib import Path

from centric_kit.cli.common import EXIT_OK, EXIT_USAGE, load_labelled, load_partition, override, sibling_path
from centric_kit.config import DEFAULT_MAX_ITERS, DEFAULT_RESTARTS, DEFAULT_TOL
from centric_kit.core.exceptions import OracleBudgetError
from centric_kit.core.io import read_model, write_json, write_labels_csv
from centric_kit.core.logging_config import log_error, log_info, log_success
from centric_kit.core.types import InitMethod, LloydConfig
from centric_kit.services.kmeans import clustering_error, kmeans_ideal, lloyd


def add_parser(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    """Register the ``cluster`` subcommand."""
    parser = subparsers.add_parser(
        "cluster",
        parents=[parent],
        help="Cluster a dataset with Lloyd's algorithm or the ideal oracle",
        description="--config takes a LloydConfig JSON; flags override its fields. "
                    "The result JSON goes to --out (stdout by default) and the labels to --labels-out.",
    )
    parser.add_argument("dataset", type=Path, help="Input dataset CSV")
    parser.add_argument("--k", type=int, default=None, help="Number of clusters")
    parser.add_argument("--restarts", type=int, default=None, help=f"Lloyd restarts (default {DEFAULT_RESTARTS})")
    parser.add_argument("--max-iters", type=int, default=None, help=f"Iteration cap (default {DEFAULT_MAX_ITERS})")
    parser.add_argument("--tol", type=float, default=None, help=f"Relative improvement threshold (default {DEFAULT_TOL:g})")
    parser.add_argument("--init", choices=[m.value for m in InitMethod], default=None, help="Initialization")
    parser.add_argument("--ideal", action="store_true", help="Use exhaustive enumeration (small instances only)")
    parser.add_argument("--reference", type=Path, default=None, help="Labels (or labelled dataset) to score against")
    parser.add_argument("--labels-out", type=Path, default=None, help="Partition CSV output")
    parser.set_defaults(handler=run)


def build_lloyd_config(args: argparse.Namespace) -> LloydConfig:
    """LloydConfig from --config with command-line overrides."""
    base = read_model(args.config, LloydConfig).model_dump() if args.config else {}
    for name, value in (
        ("k", args.k),
        ("restarts", args.restarts),
        ("max_iters", args.max_iters),
        ("tol", args.tol),
        ("init", InitMethod(args.init) if args.init else None),
        ("seed", args.seed),
    ):
        base[name] = override(value, base.get(name))
    return LloydConfig.model_validate({name: value for name, value in base.items() if value is not None})


def run(args: argparse.Namespace) -> int:
    """Cluster, write labels and the result, and score against a reference."""
    dataset, _ = load_labelled(args.dataset)
    lloyd_config = build_lloyd_config(args)

    if args.ideal:
        try:
            result = kmeans_ideal(dataset, lloyd_config.k)
        except OracleBudgetError as e:
            log_error(f"{e}. Run without --ideal to use Lloyd's algorithm instead.")
            return EXIT_USAGE
    else:
        result = lloyd(dataset, lloyd_config)

    payload = result.to_json_dict()
    if args.ideal:
        payload["config"] = {"k": lloyd_config.k}
    else:
        payload["config"] = lloyd_config.model_dump(mode="json", by_alias=True)

    if args.reference is not None:
        reference = load_partition(args.reference, dataset.n)
        errors = clustering_error(reference, result.partition)
        payload["clustering_error"] = errors
        log_info(f"Clustering error vs {args.reference}: {errors} of {dataset.n} points")

    labels_out = args.labels_out
    if labels_out is None and args.out is not None:
        labels_out = sibling_path(args.out, ".labels.csv")
    if labels_out is not None:
        write_labels_csv(result.partition, labels_out)
    write_json(payload, args.out)
    log_success(f"{result.method} k={lloyd_config.k}: cost={result.cost:.10g}")
    return EXIT_OK
