import argparse
from typing import List

from movoid.cli.commands.common import EXIT_INVALID, EXIT_OK, add_space_arguments, build_space, emit_json
from movoid.core.config import Settings
from movoid.geometry.polar import PolarSpace
from movoid.geometry.projgeom import ProjectiveSubspace
from movoid.models.reports import IdentityReport
from movoid.repositories.pointset_repository import PointSetRepository, parse_subspace
from movoid.services.identities import (
    check_aid1,
    check_aid2,
    check_aid2_equality,
    check_counting_identity,
    check_le1,
    check_main_inequality,
    check_point_sums,
    run_identity_suite,
)
from movoid.services.ovoid import WeightFunction

IDENTITIES = ["le1", "counting", "point-sums", "aid1", "aid2", "eqnew"]


def register(subparsers) -> None:
    parser = subparsers.add_parser("check-identities", help="evaluate the counting identities on a point set")
    add_space_arguments(parser)
    parser.add_argument("--ovoid", required=True, help="point set in .pts format")
    parser.add_argument("--m", required=True, type=int)
    parser.add_argument("--identity", default="all", choices=IDENTITIES + ["all"])
    parser.add_argument("--pi", default=None,
                        help="subspace as ';'-separated spanning vectors, e.g. '1,0,0,0;0,0,1,0'")
    parser.add_argument("--samples", type=int, default=50, help="sampled inputs per identity")
    parser.add_argument("--seed", type=int, default=0)
    parser.set_defaults(handler=handle)


def failed(report: IdentityReport) -> bool:
    """A report counts against the set only when it was evaluated under its hypothesis."""
    return not report.passed and report.hypothesis_ok and not report.skipped


def _at_subspace(w: WeightFunction, m: int, pi: ProjectiveSubspace, wanted: List[str]) -> List[IdentityReport]:
    space: PolarSpace = w.space
    isotropic = space.is_totally_isotropic(pi)
    reports: List[IdentityReport] = []
    if "le1" in wanted and pi.dim <= space.n - 1:
        reports.append(check_le1(w, m, pi))
    if "counting" in wanted and isotropic and pi.dim <= space.r - 1:
        reports.append(check_counting_identity(w, m, pi))
    if "point-sums" in wanted and pi.is_point and isotropic and w.is_binary:
        reports.extend(check_point_sums(w, m, space.ambient.point_index(pi.basis[0])))
    if isotropic and space.r >= 2 and pi.dim == space.r - 2:
        if "aid1" in wanted:
            reports.append(check_aid1(w, m, pi))
        if "aid2" in wanted:
            reports.append(check_aid2_equality(w, m, pi))
            reports.append(check_aid2(w, m, pi))
        if "eqnew" in wanted:
            reports.append(check_main_inequality(w, m, pi))
    return reports


def handle(args: argparse.Namespace, config: Settings) -> int:
    space = build_space(args)
    points = PointSetRepository(space.ambient).load(args.ovoid)
    w = WeightFunction.from_points(space, points)
    wanted = IDENTITIES if args.identity == "all" else [args.identity]
    if args.pi:
        reports = _at_subspace(w, args.m, parse_subspace(space.ambient, args.pi), wanted)
    else:
        reports = run_identity_suite(w, args.m, wanted, samples=args.samples, seed=args.seed)
    emit_json(reports)
    return EXIT_INVALID if any(failed(r) for r in reports) else EXIT_OK
