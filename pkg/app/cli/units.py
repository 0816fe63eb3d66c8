"""Dimensional analysis commands: units reduce, units check."""

from __future__ import annotations

from pathlib import Path

import typer

from ..quantity import check_equation_dims, format_dimension, natural_reduce, parse_unit_expr
from ._shared import (
    OutputFormat,
    app,
    constants_option,
    emit,
    fail,
    format_option,
    handle_errors,
    load_table,
    new_report,
    out_option,
    sub_app,
)

units_app = sub_app("Dimensional analysis in the natural (m, kg, s) unit system.")
app.add_typer(units_app, name="units")


@units_app.command("reduce", help="Print the canonical natural-unit form of a unit expression.")
def reduce_cmd(
    expr: str = typer.Argument(..., help='Unit expression, e.g. "C m^-3" or "N s m^-1 m^-3".'),
    constants: Path | None = constants_option(),
    fmt: OutputFormat = format_option(),
    out: Path | None = out_option(),
):
    table = load_table(constants)
    with handle_errors():
        quantity = parse_unit_expr(expr)
    natural = natural_reduce(quantity.dim)

    report = new_report("units reduce", table, expr=expr)
    report.add("dimension", format_dimension(quantity.dim), units=None)
    report.add("natural", format_dimension(natural), units=None)
    report.add("scale", float(quantity.magnitude), units=format_dimension(natural), note="SI magnitude of one unit")
    emit(report, fmt, out)


@units_app.command("check", help="Compare equation terms dimensionally. Exit 2 when inconsistent.")
def check_cmd(
    lhs: str = typer.Option(..., "--lhs", help="Left-hand side unit expression."),
    rhs: list[str] = typer.Option(..., "--rhs", help="Right-hand term unit expression (repeatable)."),
    constants: Path | None = constants_option(),
    fmt: OutputFormat = format_option(),
    out: Path | None = out_option(),
):
    table = load_table(constants)
    if not rhs:
        fail("--rhs: at least one right-hand term is required")
    with handle_errors():
        lhs_dim = parse_unit_expr(lhs).dim
        rhs_dims = [parse_unit_expr(term).dim for term in rhs]
        result = check_equation_dims(lhs_dim, rhs_dims)

    report = new_report("units check", table, lhs=lhs, rhs=", ".join(rhs))
    report.add("lhs", result.lhs, units=None)
    for i, (expr, term) in enumerate(zip(rhs, result.terms, strict=True), start=1):
        report.add(f"rhs[{i}]", term.dimension, units=None, note=f"{expr}: {'ok' if term.consistent else 'MISMATCH'}")
    report.add("consistent", result.consistent, units=None)
    emit(report, fmt, out)
    if not result.consistent:
        raise typer.Exit(2)
