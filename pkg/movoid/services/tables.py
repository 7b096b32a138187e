import csv
import io
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from typing import Callable, Dict, List, Tuple

from movoid.models.enums import SpaceKind
from movoid.services.bounds import bound_main, bound_q7, bound_small_improv

# Thresholds at or above this are also rendered in scientific notation
SCIENTIFIC_FROM = 10**6


def scientific(value: int, digits: int = 3) -> str:
    """Render an exact integer with `digits` significant digits, round half even: 2.53e24."""
    with localcontext() as ctx:
        ctx.rounding = ROUND_HALF_EVEN
        ctx.prec = max(digits, len(str(abs(value))) + 2)
        text = format(Decimal(value), f".{digits - 1}e")
    mantissa, exponent = text.split("e")
    return f"{mantissa}e{int(exponent)}"


def display(value: int) -> str:
    return scientific(value) if value >= SCIENTIFIC_FROM else str(value)


@dataclass(frozen=True)
class TableSpec:
    number: int
    caption: str
    key: str
    rows: Tuple[Tuple[int, str], ...]  # (parameter value, label)
    new_column: str
    new: Callable[[int], int]
    small: Callable[[int], int]


def _rank_table(number: int, caption: str, kind: SpaceKind, q: int, ranks: List[int]) -> TableSpec:
    return TableSpec(
        number=number,
        caption=caption,
        key="r",
        rows=tuple((r, str(r)) for r in ranks),
        new_column="main",
        new=lambda r: bound_main(kind, r, q).threshold,
        small=lambda r: bound_small_improv(kind, r, q).threshold,
    )


TABLES: Dict[int, TableSpec] = {
    3: _rank_table(3, "Bounds for m-ovoids of W(2r-1,3)", SpaceKind.SYMPLECTIC, 3, [4, 5, 6, 7, 100]),
    4: _rank_table(4, "Bounds for m-ovoids of Q-(2r+1,3)", SpaceKind.ELLIPTIC, 3, [4, 5, 6, 7, 100]),
    5: _rank_table(5, "Bounds for m-ovoids of H(2r,3^2)", SpaceKind.HERMITIAN, 9, [3, 4, 5, 6, 7, 100]),
    6: TableSpec(
        number=6,
        caption="Bounds for m-ovoids of Q-(7,q)",
        key="q",
        rows=((3, "3"), (4, "4"), (5, "5"), (7, "7"), (8, "8"), (243, "3^5")),
        new_column="q7",
        new=lambda q: bound_q7(q).threshold,
        small=lambda q: bound_small_improv(SpaceKind.ELLIPTIC, 3, q).threshold,
    ),
}


def table_rows(number: int) -> List[Dict[str, object]]:
    spec = TABLES[number]
    rows = []
    for value, label in spec.rows:
        new, small = spec.new(value), spec.small(value)
        rows.append({
            spec.key: label,
            spec.new_column: new,
            "small": small,
            f"{spec.new_column}_display": display(new),
            "small_display": display(small),
        })
    return rows


def emit_tables(which: List[int] = None) -> Dict[int, List[Dict[str, object]]]:
    """Rows of the requested tables (all four by default)."""
    return {n: table_rows(n) for n in (which or sorted(TABLES))}


def table_csv(number: int) -> str:
    """The printed cells of a table: one label column and the two displayed bounds."""
    spec = TABLES[number]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([spec.key, spec.new_column, "small"])
    for row in table_rows(number):
        writer.writerow([row[spec.key], row[f"{spec.new_column}_display"], row["small_display"]])
    return out.getvalue()


def table_text(number: int) -> str:
    spec = TABLES[number]
    lines = [f"Table {number}: {spec.caption}"]
    for row in table_rows(number):
        label = row[spec.key]
        new = str(row[f"{spec.new_column}_display"]).replace("e", " x 10^")
        small = str(row["small_display"]).replace("e", " x 10^")
        lines.append(f"{spec.key}={label:>4}  {spec.new_column}: m >= {new:<14} small: m >= {small}")
    return "\n".join(lines) + "\n"
