import argparse

import structlog

from movoid.cli.commands.common import EXIT_INVALID, EXIT_OK, add_space_arguments, build_space, emit_json
from movoid.core.config import Settings
from movoid.core.exceptions import WeightError
from movoid.repositories.pointset_repository import PointSetRepository
from movoid.services.ovoid import WeightFunction, perp_profile, validate_m_ovoid, validate_weighted_m_ovoid

logger = structlog.get_logger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify-ovoid", help="validate a point set as an m-ovoid")
    add_space_arguments(parser)
    parser.add_argument("--m", required=True, type=int)
    parser.add_argument("--input", required=True, help="point set in .pts format")
    parser.add_argument("--point-equation", action="store_true",
                        help="also check the weighted point equation at every polar point")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, config: Settings) -> int:
    space = build_space(args)
    points = PointSetRepository(space.ambient).load(args.input)
    try:
        w = WeightFunction.from_points(space, points)
    except WeightError as e:
        emit_json({"certificate": {"space": space.name, "m": args.m, "valid": False, "message": str(e)}})
        return EXIT_INVALID

    certificate = validate_m_ovoid(w, args.m)
    payload = {"certificate": certificate, "perp_profile": perp_profile(w, args.m)}
    valid = certificate.valid
    if args.point_equation:
        weighted = validate_weighted_m_ovoid(w, args.m)
        payload["point_equation"] = weighted
        valid = valid and weighted.valid
    emit_json(payload)
    logger.info("ovoid_verified", space=space.name, m=args.m, valid=valid, size=certificate.size)
    return EXIT_OK if valid else EXIT_INVALID
