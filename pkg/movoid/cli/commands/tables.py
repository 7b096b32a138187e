import argparse
import sys

from movoid.cli.commands.common import EXIT_OK, add_format_argument, emit_json
from movoid.core.config import Settings
from movoid.services.tables import TABLES, emit_tables, table_csv, table_text

FORMATS = ["csv", "table", "json"]


def register(subparsers) -> None:
    parser = subparsers.add_parser("tables", help="reproduce the published bound tables")
    parser.add_argument("--which", type=int, action="append", choices=sorted(TABLES),
                        help="table number; repeat for several (default: all)")
    add_format_argument(parser, FORMATS)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, config: Settings) -> int:
    which = sorted(set(args.which or TABLES))
    # CSV is the default here regardless of MOVOID_OUTPUT_FORMAT
    fmt = args.output_format or "csv"
    if fmt == "json":
        emit_json({str(n): rows for n, rows in emit_tables(which).items()})
    else:
        render = table_csv if fmt == "csv" else table_text
        sys.stdout.write("\n".join(render(n) for n in which))
    return EXIT_OK
