"""Radial Poisson command: poisson solve."""

from __future__ import annotations

from enum import StrEnum
from pathlib import Path

import numpy as np
import typer
from rich.table import Table

from ..constants import ConstantsTable
from ..dynamic_charge import dynamic_charge_q, dynamic_charge_source
from ..hydrogen import HydrogenModel, oscillation_from_model
from ..poisson import (
    BoundaryCondition,
    PointSource,
    RadialGrid,
    Scheme,
    Spacing,
    convergence_study,
    electric_field,
    gauss_flux_check,
    solve_radial_poisson,
)
from ._shared import (
    OutputFormat,
    app,
    constants_option,
    csv_text,
    emit,
    handle_errors,
    length_value,
    load_table,
    new_report,
    out_option,
    sub_app,
)

STUDY_SIZES = [64, 128, 256, 512]

poisson_app = sub_app("Radial solver for the modified Poisson equation.")
app.add_typer(poisson_app, name="poisson")


class Profile(StrEnum):
    UNIFORM_SPHERE = "uniform-sphere"
    POINT = "point"


def _study(inputs: dict, table: ConstantsTable, scheme: Scheme, fmt: OutputFormat, out: Path | None) -> None:
    with handle_errors():
        study = convergence_study(STUDY_SIZES, scheme=scheme)
    report = new_report("poisson solve --study", table, **inputs)
    for row in study.rows:
        report.add(f"n={row.n_points}.l2_error", row.l2_error, note="relative L2 error vs sin(kr)/r")
        if row.order is not None:
            report.add(f"n={row.n_points}.order", row.order)
    report.add("min_order", study.min_order)
    rows = Table(title=f"Convergence ({scheme.value})")
    for column in ("n", "h", "L2 error", "order"):
        rows.add_column(column, justify="right")
    for row in study.rows:
        order = "" if row.order is None else f"{row.order:.3f}"
        rows.add_row(str(row.n_points), f"{row.h:.4e}", f"{row.l2_error:.4e}", order)
    emit(report, fmt, out, table=rows)


@poisson_app.command("solve", help="Solve for φ(r) of the proton's dynamic charge (CSV columns r, phi, E).")
def solve_cmd(
    rmin: str = typer.Option("0.14fm", "--rmin", help="Inner radius (flux condition from Gauss's law)."),
    rmax: str = typer.Option("14fm", "--rmax", help="Outer radius (φ = 0)."),
    n: int = typer.Option(1024, "--n", help="Number of grid nodes.", min=16),
    profile: Profile = typer.Option(Profile.UNIFORM_SPHERE, "--profile", help="Source: uniform-sphere or point."),
    t: float | None = typer.Option(None, "--t", help="Time in seconds (default: a quarter period, peak charge)."),
    k1: float = typer.Option(1.0, "--k1", help="Gauss-law constant; 1 gives φ = q/r, 1/(4π) gives Δφ = -σ."),
    spacing: Spacing = typer.Option(Spacing.UNIFORM, "--spacing", help="Node spacing: uniform or logarithmic."),
    scheme: Scheme = typer.Option(Scheme.CONSERVATIVE, "--scheme", help="Discretisation: conservative or central."),
    rp: str = typer.Option("1.4fm", "--rp", help="Proton radius."),
    study: bool = typer.Option(False, "--study", help="Run the convergence study instead (JSON by default)."),
    constants: Path | None = constants_option(),
    fmt: OutputFormat | None = typer.Option(
        None, "--format", "-f", help="text, json or csv (default csv; json with --study)."
    ),
    out: Path | None = out_option(),
):
    table = load_table(constants)
    inputs = {"n": n, "scheme": scheme.value, "spacing": spacing.value}
    if study:
        study_inputs = {"scheme": scheme.value, "sizes": [float(s) for s in STUDY_SIZES]}
        _study(study_inputs, table, scheme, fmt or OutputFormat.JSON, out)
        return

    r_min, r_max, radius = length_value(rmin, "--rmin"), length_value(rmax, "--rmax"), length_value(rp, "--rp")
    with handle_errors():
        oscillation = oscillation_from_model(HydrogenModel.from_constants(table, R_p=radius))
        time = oscillation.period / 4 if t is None else t
        grid = RadialGrid(r_min=r_min, r_max=r_max, n_points=n, spacing=spacing)
        charge = float(dynamic_charge_q(oscillation, time))
        source = PointSource(q=charge) if profile is Profile.POINT else dynamic_charge_source(oscillation, time)
        outer = BoundaryCondition.dirichlet(0.0)
        snapshot = solve_radial_poisson(grid, source, None, outer, k1=k1, t=time, scheme=scheme)
        field = electric_field(snapshot)

    report = new_report(
        "poisson solve", table, **inputs, rmin=rmin, rmax=rmax, profile=profile.value, t=time, k1=k1, rp=rp
    )
    report.add("q_D", charge, units="J m^-2")
    report.add("backward_error", snapshot.residual)
    r = snapshot.r
    r_flux = float(r[-2])
    if r_flux > radius:
        check = gauss_flux_check(snapshot, source, r_flux)
        report.add("gauss_relative_error", check.relative_error, note=f"flux through r = {r_flux:.4e} m")
    report.add("r", [float(v) for v in r], units="m")
    report.add("phi", [float(v) for v in snapshot.phi], units="J m^-3")
    report.add("E", [float(v) for v in field], units="N m^-3")

    rows = Table(title=f"φ(r), {profile.value}")
    for column in ("r [m]", "phi [J m^-3]", "E [N m^-3]"):
        rows.add_column(column, justify="right")
    stride = max(1, r.size // 32)
    for i in np.arange(0, r.size, stride):
        rows.add_row(f"{r[i]:.6e}", f"{snapshot.phi[i]:.6e}", f"{field[i]:.6e}")
    series = zip(r, snapshot.phi, field, strict=True)
    body = csv_text(["r", "phi", "E"], ([repr(float(a)), repr(float(b)), repr(float(c))] for a, b, c in series))
    emit(report, fmt or OutputFormat.CSV, out, table=rows, csv_body=body)
