import argparse

import structlog

from movoid.cli.commands.common import EXIT_OK, add_space_arguments, build_space, emit_json
from movoid.core.config import Settings
from movoid.core.exceptions import CapExceededError
from movoid.geometry.polar import generator_count_formula, polar_point_count

logger = structlog.get_logger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("info", help="parameters and counts of a polar space")
    add_space_arguments(parser)
    parser.add_argument("--enumerate", action="store_true", help="also enumerate points and generators")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, config: Settings) -> int:
    kind, r, q = args.space, args.r, args.q
    space = build_space(args)
    payload = {
        "kind": kind.value,
        "r": r,
        "q": q,
        "e": str(kind.e),
        "n": space.n,
        "points": polar_point_count(kind, r, q),
        "generators": generator_count_formula(kind, r, q),
        "points_per_generator": space.theta_gen,
    }
    if args.enumerate:
        try:
            payload["enumerated_points"] = space.num_points
            payload["enumerated_generators"] = len(space.generators)
        except CapExceededError as e:
            logger.warning("enumeration_skipped", space=space.name, reason=str(e))
            payload["enumeration"] = f"skipped: {e}"
    emit_json(payload)
    return EXIT_OK
