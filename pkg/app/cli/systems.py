"""Unit-system registry command: systems table."""

from __future__ import annotations

from pathlib import Path

from rich.table import Table

from ..unit_systems import lorentz_force_dimension_checks, maxwell_table
from ._shared import (
    OutputFormat,
    app,
    constants_option,
    emit,
    format_option,
    load_table,
    new_report,
    out_option,
    sub_app,
)

systems_app = sub_app("Electromagnetic unit systems and their Maxwell constants.")
app.add_typer(systems_app, name="systems")


@systems_app.command("table", help="Print k1, k2, k3, alpha for the six unit systems.")
def table_cmd(
    constants: Path | None = constants_option(),
    fmt: OutputFormat = format_option(),
    out: Path | None = out_option(),
):
    constants_table = load_table(constants)
    rows = [entry.as_row() for entry in maxwell_table()]

    report = new_report("systems table", constants_table)
    for entry, row in zip(maxwell_table(), rows, strict=True):
        for column in ("k1", "k2", "k3", "alpha"):
            report.add(f"{entry.name.value}.{column}", row[column], units=None, source="REFERENCE")
        report.add(f"{entry.name.value}.consistent", entry.is_consistent(), units=None, note="k1/(k2 k3 alpha) = c^2")
    for label, check in lorentz_force_dimension_checks().items():
        report.add(f"force_law.{label}.consistent", check.consistent, units=None)

    table = Table(title="Maxwell constants")
    for column in rows[0]:
        table.add_column(column, no_wrap=True)
    for row in rows:
        table.add_row(*row.values())
    emit(report, fmt, out, table=table)
