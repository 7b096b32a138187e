import argparse
import csv
import sys

from movoid.cli.commands.common import EXIT_OK, add_format_argument, add_space_arguments, emit_json, output_format
from movoid.core.config import Settings
from movoid.models.bounds import BoundReport
from movoid.models.enums import Theorem
from movoid.services.bounds import PRECEDENCE, best_bound

FORMATS = ["json", "table", "csv"]
COLUMNS = ["theorem", "A", "R", "D", "threshold", "applicable", "reason"]


def register(subparsers) -> None:
    parser = subparsers.add_parser("bounds", help="lower bounds on m for non-trivial m-ovoids")
    add_space_arguments(parser)
    parser.add_argument("--theorem", default="all", choices=[t.value for t in Theorem] + ["all"])
    add_format_argument(parser, FORMATS)
    parser.set_defaults(handler=handle)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _rows(report: BoundReport):
    data = report.model_dump(mode="json")
    return [[_cell(b[c]) for c in COLUMNS] for b in data["bounds"]]


def render_table(report: BoundReport) -> str:
    rows = [COLUMNS] + _rows(report)
    widths = [max(len(row[i]) for row in rows) for i in range(len(COLUMNS))]
    lines = [f"{report.space.value} r={report.r} q={report.q} e={report.e}"]
    lines += ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.append(f"best: m >= {report.best.threshold} ({report.best.theorem.value})")
    lines += [f"note: {note}" for note in report.notes]
    return "\n".join(lines) + "\n"


def handle(args: argparse.Namespace, config: Settings) -> int:
    theorems = None if args.theorem == "all" else [Theorem(args.theorem)]
    report = best_bound(args.space, args.r, args.q, theorems)
    if theorems and theorems[0] not in PRECEDENCE:
        report.notes.append("the asymptotic form is never used for the best bound")
    fmt = output_format(args, config, FORMATS)
    if fmt == "json":
        emit_json(report)
    elif fmt == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(COLUMNS)
        writer.writerows(_rows(report))
    else:
        sys.stdout.write(render_table(report))
    return EXIT_OK
