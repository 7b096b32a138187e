"""Helpers shared by the subcommands: common flags, space construction and output."""
import argparse
import json
import sys
from typing import Any, Iterable, List, TextIO

from pydantic import BaseModel

from movoid.cli.exit_codes import EXIT_INVALID, EXIT_OK, EXIT_USAGE  # noqa: F401
from movoid.core.config import Settings
from movoid.geometry.polar import PolarSpace, polar_space
from movoid.models.enums import SpaceKind


def add_space_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--space", required=True, type=SpaceKind.parse, help="Q- | W | H")
    parser.add_argument("--q", required=True, type=int, help="order of the ambient field")
    parser.add_argument("--r", required=True, type=int, help="rank of the polar space")


def add_format_argument(parser: argparse.ArgumentParser, choices: Iterable[str]) -> None:
    parser.add_argument("--format", dest="output_format", choices=list(choices), default=None,
                        help="output format (defaults to MOVOID_OUTPUT_FORMAT)")


def output_format(args: argparse.Namespace, config: Settings, allowed: List[str]) -> str:
    chosen = getattr(args, "output_format", None) or config.OUTPUT_FORMAT
    return chosen if chosen in allowed else allowed[0]


def build_space(args: argparse.Namespace) -> PolarSpace:
    return polar_space(args.space, args.r, args.q)


def to_jsonable(payload: Any) -> Any:
    if isinstance(payload, BaseModel):
        return payload.model_dump(mode="json", by_alias=True)
    if isinstance(payload, (list, tuple)):
        return [to_jsonable(item) for item in payload]
    if isinstance(payload, dict):
        return {key: to_jsonable(value) for key, value in payload.items()}
    return payload


def emit_json(payload: Any, stream: TextIO = None) -> None:
    """Write payload as indented JSON; key order follows the models so output is byte-stable."""
    stream = stream or sys.stdout
    stream.write(json.dumps(to_jsonable(payload), indent=2, ensure_ascii=False))
    stream.write("\n")
