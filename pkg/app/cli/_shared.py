"""Shared state and helpers across CLI command modules.

Holds the single Typer ``app``, the consoles, the option declarations every
command repeats (``--constants``, ``--format``, ``--out``) and the report
writers.
"""

from __future__ import annotations

import csv
import io
from collections.abc import Iterable, Iterator, Sequence
from contextlib import contextmanager
from enum import StrEnum
from pathlib import Path
from typing import NoReturn

import click
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.table import Table

from ..constants import ConstantsTable, resolve_constants
from ..errors import DynChargeError
from ..log import configure_logging
from ..models import RunReport
from ..quantity import parse_length


class OrderCommands(typer.core.TyperGroup):
    """Sorts commands in help and reports usage errors with exit code 1.

    Exit code 2 is reserved for failed consistency checks.
    """

    def list_commands(self, ctx):
        return sorted(super().list_commands(ctx))

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as exc:
            exc.exit_code = 1
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as exc:
            exc.exit_code = 1
            raise


def sub_app(help_text: str) -> typer.Typer:
    return typer.Typer(
        help=help_text,
        cls=OrderCommands,
        rich_markup_mode="rich",
        context_settings={"help_option_names": ["-h", "--help"]},
    )


app = typer.Typer(
    help="dyncharge: dynamic-charge model toolkit (natural units, Poisson solver, hydrogen budget, ħ from R_p).",
    epilog="Quick start: dyncharge hydrogen report; dyncharge hbar-derive; dyncharge gravity flux",
    cls=OrderCommands,
    rich_markup_mode="rich",
    pretty_exceptions_show_locals=False,
    add_completion=False,
    invoke_without_command=True,
    context_settings={"help_option_names": ["-h", "--help"]},
)
console = Console()
err_console = Console(stderr=True)


@app.callback()
def root(
    ctx: typer.Context,
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log solver and quadrature details to stderr."),
):
    """Configure logging; with no subcommand, print help and exit 1."""
    configure_logging(verbose)
    if ctx.invoked_subcommand is None:
        console.print(ctx.get_help())
        raise typer.Exit(1)


class OutputFormat(StrEnum):
    TEXT = "text"
    JSON = "json"
    CSV = "csv"


def constants_option() -> Path | None:
    return typer.Option(
        None,
        "--constants",
        help="Constants override file (key = value lines, SI magnitudes).",
        exists=True,
        dir_okay=False,
    )


def format_option(default: OutputFormat = OutputFormat.TEXT) -> OutputFormat:
    return typer.Option(default, "--format", "-f", help="Output format: text, json or csv.", case_sensitive=False)


def out_option() -> Path | None:
    return typer.Option(None, "--out", "-o", help="Write output to this file instead of stdout.", dir_okay=False)


def fail(message: str) -> NoReturn:
    err_console.print(f"[red]{escape(message)}[/red]")
    raise typer.Exit(1)


def _validation_message(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        location = ".".join(str(item) for item in error["loc"])
        parts.append(f"{location}: {error['msg']}" if location else error["msg"])
    return "invalid parameters: " + "; ".join(parts)


@contextmanager
def handle_errors() -> Iterator[None]:
    """Turn toolkit and validation errors into a red message and exit code 1."""
    try:
        yield
    except ValidationError as exc:
        fail(_validation_message(exc))
    except DynChargeError as exc:
        fail(str(exc))


def load_table(path: Path | None) -> ConstantsTable:
    with handle_errors():
        return resolve_constants(path)


def length_value(text: str, flag: str, default_unit: str = "fm") -> float:
    """Parse a length such as ``1.4fm``; errors name the flag."""
    try:
        return parse_length(text, default_unit)
    except (DynChargeError, ValueError) as exc:
        fail(f"{flag}: {exc}")


def length_list(text: str, flag: str) -> list[float]:
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        fail(f"{flag}: expected at least one length")
    return [length_value(item, flag) for item in items]


def new_report(command: str, constants: ConstantsTable, **inputs) -> RunReport:
    return RunReport(command=command, inputs=inputs, constants_fingerprint=constants.fingerprint())


def format_value(value) -> str:
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, list):
        return f"[{len(value)} values]"
    return str(value)


def report_table(report: RunReport) -> Table:
    table = Table(title=report.command)
    table.add_column("Name", style="bold", no_wrap=True)
    table.add_column("Value", justify="right")
    table.add_column("Units", style="cyan")
    table.add_column("Source", style="dim")
    table.add_column("Note", style="dim", overflow="fold")
    for name, out in report.outputs.items():
        table.add_row(
            escape(name),
            escape(format_value(out.value)),
            escape(out.units or ""),
            out.source,
            escape(out.note or ""),
        )
    return table


def csv_text(header: Sequence[str], rows: Iterable[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def report_csv(report: RunReport) -> str:
    rows = (
        [name, out.value, out.units or "", out.source]
        for name, out in report.outputs.items()
        if not isinstance(out.value, list)
    )
    return csv_text(["name", "value", "units", "source"], rows)


def _write(text: str, out: Path | None) -> None:
    if out is None:
        typer.echo(text, nl=False)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")


def _render(table: Table, notes: list[str], out: Path | None) -> None:
    target = console if out is None else Console(file=io.StringIO(), width=120, color_system=None)
    target.print(table)
    for note in notes:
        target.print(f"[dim]{escape(note)}[/dim]")
    if out is not None:
        _write(target.file.getvalue(), out)


def emit(
    report: RunReport,
    fmt: OutputFormat,
    out: Path | None,
    *,
    table: Table | None = None,
    csv_body: str | None = None,
) -> None:
    """Write ``report`` in the requested format.

    ``table`` replaces the generic name/value table for text output and
    ``csv_body`` replaces the name/value CSV (sampled series).
    """
    if fmt is OutputFormat.JSON:
        _write(report.to_json(), out)
    elif fmt is OutputFormat.CSV:
        _write(csv_body if csv_body is not None else report_csv(report), out)
    else:
        _render(table if table is not None else report_table(report), report.notes, out)
