"""Command-line entry point: `python main.py <subcommand> ...`."""
import argparse
import sys
from typing import List, Optional

import structlog
from pydantic import ValidationError

from movoid.cli.exit_codes import EXIT_INVALID, EXIT_OK, EXIT_USAGE
from movoid.core.exceptions import ConfigurationException, ConsistencyError, MovoidException, WeightError
from movoid.core.logging import configure_logging

logger = structlog.get_logger(__name__)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so usage errors map to exit code 1."""

    def error(self, message: str):
        raise ConfigurationException(message)


def build_parser() -> argparse.ArgumentParser:
    from movoid.cli.commands import bounds, identities, info, ovoid, search, tables

    parser = _Parser(prog="movoid", description="Finite classical polar spaces and m-ovoids")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ...")
    parser.add_argument("--log-json", action="store_true", help="JSON log lines on stderr")
    subparsers = parser.add_subparsers(dest="command", parser_class=_Parser)
    subparsers.required = True
    for module in (info, bounds, tables, ovoid, identities, search):
        module.register(subparsers)
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    update = {}
    if args.log_level:
        update["LOG_LEVEL"] = args.log_level
    if args.log_json:
        update["LOG_JSON"] = True
    if getattr(args, "workers", None) is not None:
        update["WORKERS"] = args.workers
    if getattr(args, "budget", None) is not None:
        update["NODE_BUDGET"] = args.budget
    output_format = getattr(args, "output_format", None)
    if output_format:
        update["OUTPUT_FORMAT"] = output_format
    return update


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse argv, apply flag overrides to the settings and dispatch a subcommand.

    Returns:
        int: 0 on success, 2 when the input fails validation, 1 on usage or configuration errors
    """
    argv = sys.argv[1:] if argv is None else argv
    try:
        from movoid.core.config import Settings, settings

        args = build_parser().parse_args(argv)
        # flags win over the environment
        config = Settings.model_validate({**settings.model_dump(), **_overrides(args)})
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    except (ConfigurationException, ValidationError) as e:
        sys.stderr.write(f"movoid: error: {e}\n")
        return EXIT_USAGE

    configure_logging(config.LOG_LEVEL, config.LOG_JSON)
    try:
        return args.handler(args, config)
    except (WeightError, ConsistencyError) as e:
        logger.error("validation_failed", command=args.command, error=str(e))
        sys.stderr.write(f"movoid: {e}\n")
        return EXIT_INVALID
    except MovoidException as e:
        logger.error("command_failed", command=args.command, error=str(e))
        sys.stderr.write(f"movoid: error: {e}\n")
        return EXIT_USAGE
