"""``verify``: oracle checks that Gamma++ and Gamma* keep the ideal partition."""

import argparse
from pathlib import Path

from centric_kit.cli.common import EXIT_OK, EXIT_VIOLATION, UsageError, load_labelled, override
from centric_kit.config import SCHEMA_VERSION
from centric_kit.core.io import read_model, write_json
from centric_kit.core.logging_config import log_success, log_warning
from centric_kit.core.types import SuiteConfig, SuiteSummary, VerdictKind
from centric_kit.services.analysis import run_random_suite, verify_centric_consistency, verify_theorem3

CHECKS = ("gamma_plus_plus", "gamma_star", "both")


def add_parser(subparsers: argparse._SubParsersAction, parent: argparse.ArgumentParser) -> None:
    """Register the ``verify`` subcommand."""
    parser = subparsers.add_parser(
        "verify",
        parents=[parent],
        help="Check ideal-partition preservation on one dataset or a random suite",
        description="Exit code 0 when nothing is violated, 2 when some check is violated. "
                    "--config takes a SuiteConfig JSON for --random-suite.",
    )
    parser.add_argument("dataset", type=Path, nargs="?", default=None, help="Dataset CSV (single-instance mode)")
    parser.add_argument("--random-suite", action="store_true", help="Run a seeded randomized suite")
    parser.add_argument("--check", choices=CHECKS, default=None, help="Which transform to check")
    parser.add_argument("--k", type=int, nargs="+", default=None, help="Cluster count(s)")
    parser.add_argument("--lambda", dest="lam", type=float, nargs="+", default=None, help="Contraction factor(s)")
    parser.add_argument("--subset", type=int, nargs="+", default=None, help="P for a single dataset (Gamma++)")
    parser.add_argument("--cluster", type=int, default=0, help="Ideal cluster for Gamma* on a single dataset")
    parser.add_argument("--instances", type=int, default=None, help="Suite size")
    parser.add_argument("--n", type=int, default=None, help="Points per suite instance")
    parser.add_argument("--dims", type=int, nargs="+", default=None, help="Dimensions drawn per instance")
    parser.add_argument("--subset-min", type=int, default=None, help="Smallest Gamma++ subset")
    parser.add_argument("--subset-max", type=int, default=None, help="Largest Gamma++ subset")
    parser.set_defaults(handler=run)


def build_suite(args: argparse.Namespace) -> SuiteConfig:
    """SuiteConfig from --config with command-line overrides."""
    base = read_model(args.config, SuiteConfig).model_dump() if args.config else {}
    for name, value in (
        ("instances", args.instances),
        ("n", args.n),
        ("ks", args.k),
        ("dims", args.dims),
        ("lambdas", args.lam),
        ("subset_min", args.subset_min),
        ("subset_max", args.subset_max),
        ("check", args.check),
        ("seed", args.seed),
    ):
        base[name] = override(value, base.get(name))
    return SuiteConfig.model_validate({name: value for name, value in base.items() if value is not None})


def verify_dataset(args: argparse.Namespace) -> SuiteSummary:
    """Checks on one dataset; Gamma++ needs --subset."""
    dataset, _ = load_labelled(args.dataset)
    if not args.k or len(args.k) != 1:
        raise UsageError("single-dataset verify needs exactly one --k")
    if not args.lam:
        raise UsageError("single-dataset verify needs --lambda")
    k = args.k[0]
    check = args.check or "gamma_plus_plus"

    verdicts = []
    for lam in args.lam:
        if check in ("gamma_plus_plus", "both"):
            if not args.subset:
                raise UsageError("--subset is required for the Gamma++ check")
            verdicts.append(verify_theorem3(dataset, k, args.subset, lam))
        if check in ("gamma_star", "both"):
            verdicts.append(verify_centric_consistency(dataset, k, args.cluster, lam))
    return SuiteSummary(
        preserved=sum(v.verdict is VerdictKind.PRESERVED for v in verdicts),
        tie_skipped=sum(v.verdict is VerdictKind.TIE_SKIPPED for v in verdicts),
        violated=sum(v.verdict is VerdictKind.VIOLATED for v in verdicts),
        verdicts=verdicts,
    )


def run(args: argparse.Namespace) -> int:
    """Run the checks, write the JSON summary, and signal violations in the exit code."""
    if args.random_suite == (args.dataset is not None):
        raise UsageError("give either a dataset CSV or --random-suite")

    if args.random_suite:
        suite = build_suite(args)
        summary = run_random_suite(suite)
        payload = summary.to_json_dict()
        payload["suite"] = suite.model_dump(mode="json", by_alias=True)
    else:
        summary = verify_dataset(args)
        payload = summary.to_json_dict()
        payload["schema"] = SCHEMA_VERSION
    write_json(payload, args.out)

    if summary.violated:
        log_warning(f"{summary.violated} violated verdict(s)")
        return EXIT_VIOLATION
    log_success(f"No violations (preserved={summary.preserved}, tie_skipped={summary.tie_skipped})")
    return EXIT_OK
