import pytest

from movoid.services.tables import display, emit_tables, scientific, table_csv, table_rows, table_text


def test_scientific_rounding():
    assert scientific(2_534_000_000) == "2.53e9"
    assert scientific(2_535_000_000) == "2.54e9"
    assert scientific(2_525_000_000) == "2.52e9"
    assert scientific(10**24) == "1.00e24"
    assert display(345) == "345"


def test_table3_csv():
    assert table_csv(3) == (
        "r,main,small\n"
        "4,5,4\n"
        "5,10,8\n"
        "6,20,13\n"
        "7,39,23\n"
        "100,2.53e24,3.59e23\n"
    )


def test_table4_rows():
    rows = table_rows(4)
    assert [(row["main"], row["small"]) for row in rows[:4]] == [(8, 8), (18, 13), (36, 23), (69, 40)]
    assert (rows[4]["main_display"], rows[4]["small_display"]) == ("4.37e24", "6.22e23")


def test_table5_rows():
    rows = table_rows(5)
    assert [row["r"] for row in rows] == ["3", "4", "5", "6", "7", "100"]
    assert [(row["main"], row["small"]) for row in rows[:5]] == [
        (8, 6), (29, 18), (99, 53), (330, 158), (1085, 474),
    ]
    assert (rows[5]["main_display"], rows[5]["small_display"]) == ("1.04e48", "1.12e47")


def test_table6_csv():
    lines = table_csv(6).splitlines()
    assert lines[0] == "q,q7,small"
    assert lines[1:] == ["3,2,4", "4,4,5", "5,6,6", "7,10,8", "8,11,9", "3^5,345,244"]


def test_tables_are_byte_stable():
    assert table_csv(5) == table_csv(5)
    assert set(emit_tables()) == {3, 4, 5, 6}


@pytest.mark.parametrize("number", [3, 4, 5, 6])
def test_table_text(number):
    text = table_text(number)
    assert text.startswith(f"Table {number}:")
    assert len(text.splitlines()) == len(table_rows(number)) + 1
