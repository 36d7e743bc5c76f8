#!/usr/bin/env python3
"""Main entry point for the centric-kit command-line tool.

Exit codes: 0 on success, 1 on usage or validation errors, 2 when a
``verify`` run finds a violated verdict.
"""

import sys
from typing import List, Optional

from pydantic import ValidationError

from centric_kit.cli import EXIT_USAGE, build_parser
from centric_kit.config.config import RuntimeSettings, config
from centric_kit.core.exceptions import CentricKitError
from centric_kit.core.logging_config import log_error, log_info, setup_logging


def initialize_application(log_level: Optional[str] = None) -> bool:
    """Set up logging and validate the configuration.

    Args:
        log_level: Level from --log-level; falls back to CENTRIC_KIT_LOG_LEVEL

    Returns:
        True when the configuration is usable
    """
    runtime = RuntimeSettings()
    setup_logging(level=log_level or runtime.log_level, log_file=runtime.log_file)
    log_info("centric-kit starting up")

    config.log_configuration()

    is_valid, errors = config.validate_configuration()
    if not is_valid:
        log_error("Configuration validation failed")
        for error in errors:
            log_error(f"  {error}")
        return False
    return True


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run the chosen subcommand and map failures to exit codes."""
    try:
        args = build_parser().parse_args(argv)
        if not initialize_application(args.log_level):
            return EXIT_USAGE
        return args.handler(args)
    except ValidationError as e:
        log_error(f"Invalid input: {e}")
        return EXIT_USAGE
    except CentricKitError as e:
        log_error(str(e))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
