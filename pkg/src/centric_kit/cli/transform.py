"""``transform``: apply one transform or a pipeline of transforms to a dataset CSV."""

import argparse
from pathlib import Path
from typing import List

from centric_kit.cli.common import EXIT_OK, UsageError, load_labelled
from centric_kit.core.io import append_provenance, read_models, write_dataset_csv
from centric_kit.core.logging_config import log_success
from centric_kit.core.types import SubsetMode, SubsetSampler, TransformKind, TransformSpec
from centric_kit.services.transforms import apply_pipeline


def add_parser(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    """Register the ``transform`` subcommand."""
    parser = subparsers.add_parser(
        "transform",
        parents=[parent],
        help="Apply Gamma*, Gamma++, centric-set or angular transforms",
        description="--config takes a TransformSpec JSON object or a list of them, applied in order. "
                    "Without --config a single transform is built from the flags.",
    )
    parser.add_argument("dataset", type=Path, help="Input dataset CSV")
    parser.add_argument("--kind", choices=[k.value for k in TransformKind], default=None, help="Transform kind")
    parser.add_argument("--cluster", type=int, default=None, help="Target cluster")
    parser.add_argument("--subset", type=int, nargs="+", default=None, help="Explicit point indices")
    parser.add_argument("--lambda", dest="lam", type=float, default=None, help="Contraction factor in (0, 1]")
    parser.add_argument("--factor", type=float, default=None, help="Angle scaling factor")
    parser.add_argument("--axis", type=float, nargs="+", default=None, help="Axis direction")
    parser.add_argument("--center", type=float, nargs="+", default=None, help="Center of the angular map")
    parser.add_argument("--two-sided", action="store_true", help="Angles to the axis line, not the half-line")
    parser.add_argument("--sample-fraction", type=float, default=None, help="Sample the subset from --cluster")
    parser.add_argument("--sample-mode", choices=[m.value for m in SubsetMode], default=SubsetMode.UNIFORM.value)
    parser.set_defaults(handler=run)


def build_specs(args: argparse.Namespace) -> List[TransformSpec]:
    """Specs from --config, or a single spec from the flags."""
    if args.config is not None:
        specs = read_models(args.config, TransformSpec)
    else:
        if args.kind is None:
            raise UsageError("transform needs --config or --kind")
        sample = None
        if args.sample_fraction is not None:
            if args.cluster is None:
                raise UsageError("--sample-fraction needs --cluster")
            sample = SubsetSampler(cluster=args.cluster, fraction=args.sample_fraction, mode=SubsetMode(args.sample_mode))
        specs = [TransformSpec(
            kind=TransformKind(args.kind),
            cluster=args.cluster,
            subset=args.subset,
            lambda_=args.lam,
            factor=args.factor,
            axis=args.axis,
            center=args.center,
            two_sided=args.two_sided,
            sample=sample,
        )]
    if args.seed is not None:
        specs = [
            spec.model_copy(update={"sample": spec.sample.model_copy(update={"seed": args.seed})})
            if spec.sample is not None else spec
            for spec in specs
        ]
    return specs


def run(args: argparse.Namespace) -> int:
    """Transform the dataset; labels pass through unchanged."""
    dataset, partition = load_labelled(args.dataset)
    specs = build_specs(args)
    outcome = apply_pipeline(dataset, partition, specs)
    write_dataset_csv(outcome.dataset, args.out, partition)

    if args.out is not None:
        records = [
            {"spec": spec.model_dump(mode="json", by_alias=True), "applied": step}
            for spec, step in zip(specs, outcome.metadata["steps"])
        ]
        append_provenance(args.dataset, args.out, records)
    log_success(f"Applied {len(specs)} transform(s) to {dataset.n} points")
    return EXIT_OK
