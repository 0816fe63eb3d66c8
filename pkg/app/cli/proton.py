"""Oscillating-proton command: proton q."""

from __future__ import annotations

from pathlib import Path

import typer
from rich.table import Table

from ..dynamic_charge import dynamic_charge_amplitude, sample_charge
from ..hydrogen import HydrogenModel, oscillation_from_model
from ._shared import (
    OutputFormat,
    app,
    constants_option,
    csv_text,
    emit,
    fail,
    format_option,
    handle_errors,
    length_value,
    load_table,
    new_report,
    out_option,
    sub_app,
)

proton_app = sub_app("Oscillating proton and its dynamic charge.")
app.add_typer(proton_app, name="proton")


@proton_app.command("q", help="Sample the dynamic charge q_D(t) (CSV columns t, q_D by default).")
def charge_cmd(
    t: float = typer.Option(0.0, "--t", help="First sample time in seconds."),
    samples: int = typer.Option(1, "--samples", "-n", help="Number of samples.", min=1),
    period: bool = typer.Option(False, "--period", help="Spread the samples over one oscillation period."),
    span: float | None = typer.Option(None, "--span", help="Sampled time span in seconds (instead of --period)."),
    rp: str = typer.Option("1.4fm", "--rp", help="Proton radius, e.g. 1.4fm."),
    constants: Path | None = constants_option(),
    fmt: OutputFormat = format_option(OutputFormat.CSV),
    out: Path | None = out_option(),
):
    table = load_table(constants)
    radius = length_value(rp, "--rp")
    if period and span is not None:
        fail("--span: cannot be combined with --period")
    if not period and span is None and samples > 1:
        fail("--samples: more than one sample needs --period or --span")
    with handle_errors():
        oscillation = oscillation_from_model(HydrogenModel.from_constants(table, R_p=radius))
        times, charges = sample_charge(oscillation, t, samples, None if period else (span or 0.0))

    report = new_report("proton q", table, t=t, samples=samples, period=period, span=span, rp=rp)
    report.add("x", oscillation.x, note="3d/R_p")
    report.add("omega_H", oscillation.omega_H, units="s^-1", source="config")
    report.add("q_D_amplitude", dynamic_charge_amplitude(oscillation), units="J m^-2")
    report.add("t", [float(v) for v in times], units="s")
    report.add("q_D", [float(v) for v in charges], units="J m^-2")

    rows = Table(title="q_D(t)")
    rows.add_column("t [s]", justify="right")
    rows.add_column("q_D [J m^-2]", justify="right")
    for time, charge in zip(times, charges, strict=True):
        rows.add_row(f"{time:.6e}", f"{charge:.6e}")
    body = csv_text(["t", "q_D"], ([repr(float(a)), repr(float(b))] for a, b in zip(times, charges, strict=True)))
    emit(report, fmt, out, table=rows, csv_body=body)
