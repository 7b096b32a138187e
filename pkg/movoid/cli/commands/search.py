import argparse
from pathlib import Path
from typing import List

import structlog

from movoid.cli.commands.common import EXIT_OK, add_space_arguments, build_space, emit_json
from movoid.core.config import Settings
from movoid.models.search import SearchOptions, SearchOutcome
from movoid.repositories.pointset_repository import PointSetRepository
from movoid.services.search import SearchInstance, nonexistence_sweep, search_m_ovoids

logger = structlog.get_logger(__name__)


def _add_search_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-solutions", type=int, default=1, help="0 collects every solution")
    parser.add_argument("--no-symmetry", action="store_true", help="do not fix a point of O at the root")
    parser.add_argument("--budget", type=int, default=None, help="node budget (defaults to MOVOID_NODE_BUDGET)")
    parser.add_argument("--seed", type=int, default=None, help="permute the in/out value order")
    parser.add_argument("--workers", type=int, default=None, help="parallel subtree chunks via celery")


def register(subparsers) -> None:
    parser = subparsers.add_parser("search", help="exhaustive search for m-ovoids")
    add_space_arguments(parser)
    parser.add_argument("--m", required=True, type=int)
    _add_search_arguments(parser)
    parser.add_argument("--emit", default=None, help="write solutions as .pts (extra ones get a .2, .3 ... suffix)")
    parser.set_defaults(handler=handle_search)

    sweep = subparsers.add_parser("sweep", help="search a range of m and cross-check the proven bounds")
    add_space_arguments(sweep)
    sweep.add_argument("--m-from", type=int, default=1)
    sweep.add_argument("--m-to", type=int, default=None, help="last m (default: theta_{r-1} - 1)")
    _add_search_arguments(sweep)
    sweep.set_defaults(handler=handle_sweep)


def search_options(args: argparse.Namespace, config: Settings) -> SearchOptions:
    return SearchOptions(
        max_solutions=args.max_solutions,
        symmetry=not args.no_symmetry,
        budget=config.NODE_BUDGET,
        seed=args.seed,
        checkpoint_every=config.CHECKPOINT_EVERY,
        workers=config.WORKERS,
    )


def emit_solutions(outcome: SearchOutcome, repository: PointSetRepository, target: str) -> List[Path]:
    path = Path(target)
    written = []
    for i, solution in enumerate(outcome.solutions, start=1):
        out = path if i == 1 else path.with_suffix(f".{i}{path.suffix}")
        comments = [f"{outcome.space} {outcome.m}-ovoid, {len(solution)} points", f"certificate {outcome.certificate}"]
        written.append(repository.save(out, solution, comments))
    return written


def handle_search(args: argparse.Namespace, config: Settings) -> int:
    space = build_space(args)
    outcome = search_m_ovoids(SearchInstance(space, args.m, search_options(args, config)))
    if args.emit and outcome.solutions:
        emit_solutions(outcome, PointSetRepository(space.ambient), args.emit)
    emit_json(outcome)
    return EXIT_OK


def handle_sweep(args: argparse.Namespace, config: Settings) -> int:
    space = build_space(args)
    last = args.m_to if args.m_to is not None else space.theta_gen - 1
    outcomes = nonexistence_sweep(space, range(args.m_from, last + 1), search_options(args, config))
    emit_json(outcomes)
    return EXIT_OK
