"""Deterministic report emission.

Identical inputs must yield byte-identical files: floats are rendered with
17 significant digits in lowercase scientific notation, rows keep their
input order, and files always end lines with LF regardless of platform.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass


def fmt(value) -> str:
    """Render one cell: floats as .16e (17 significant digits), rest as str."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.16e}"
    return str(value)


@dataclass(frozen=True)
class Table:
    """An ordered, homogeneous set of report rows."""

    columns: tuple
    rows: tuple

    @property
    def n_fail(self) -> int:
        if "status" not in self.columns:
            return 0
        i = self.columns.index("status")
        return sum(1 for r in self.rows if r[i] == "fail")


def csv_text(table: Table) -> str:
    lines = [",".join(table.columns)]
    lines.extend(",".join(fmt(v) for v in row) for row in table.rows)
    return "\n".join(lines) + "\n"


def write_csv(table: Table, path: str) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(csv_text(table))


def write_json(table: Table, path: str) -> None:
    """Same rows as an array of objects; numbers share the CSV formatting."""
    with open(path, "w", newline="\n") as fh:
        fh.write(_json_text(table))


def json_text(table: Table) -> str:
    return _json_text(table)


def _json_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.16e}"
    if isinstance(value, int):
        return str(value)
    return '"' + str(value).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _json_text(table: Table) -> str:
    lines = ["["]
    for i, row in enumerate(table.rows):
        cells = ", ".join(
            f'"{c}": {_json_cell(v)}' for c, v in zip(table.columns, row)
        )
        comma = "," if i + 1 < len(table.rows) else ""
        lines.append("  {" + cells + "}" + comma)
    lines.append("]")
    return "\n".join(lines) + "\n"


def use_color(stream=None) -> bool:
    import os

    stream = stream if stream is not None else sys.stdout
    if os.environ.get("NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def paint(text: str, code: str, enabled: bool) -> str:
    return f"\x1b[{code}m{text}\x1b[0m" if enabled else text
