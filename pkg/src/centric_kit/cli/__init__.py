"""Command-line surface: one module per subcommand.

Each module exposes ``add_parser(subparsers, parent)``, which registers the
subcommand and sets ``handler`` to its ``run(args) -> int``.
"""

from centric_kit.cli import cluster, experiment, generate, plot, transform, verify
from centric_kit.cli.common import (
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VIOLATION,
    CliArgumentParser,
    UsageError,
    common_arguments,
)

SUBCOMMANDS = (generate, transform, cluster, verify, experiment, plot)


def build_parser() -> CliArgumentParser:
    """Top-level parser with every subcommand registered."""
    parser = CliArgumentParser(
        prog="centric-kit",
        description="k-means consistency toolkit: Gamma* and Gamma++ transforms, "
                    "Lloyd and exhaustive clustering, oracle checks and the stability experiment.",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    parent = common_arguments()
    for module in SUBCOMMANDS:
        module.add_parser(subparsers, parent)
    return parser


__all__ = [
    "build_parser", "SUBCOMMANDS", "CliArgumentParser", "UsageError",
    "EXIT_OK", "EXIT_USAGE", "EXIT_VIOLATION",
]
