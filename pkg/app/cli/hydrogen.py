"""Hydrogen commands: hydrogen report, hbar-derive."""

from __future__ import annotations

import asyncio
from pathlib import Path

import typer
from rich.table import Table

from ..constants import ConstantsTable
from ..dynamic_charge import dynamic_charge_amplitude
from ..hydrogen import (
    FERMI,
    HbarCandidate,
    HydrogenModel,
    energy_budget,
    eta_from_model,
    hbar_candidate,
    oscillation_amplitude_x,
    oscillation_from_model,
    proton_radius_from_profile,
    rho0,
    solve_amplitude_x,
    u_n,
)
from ._shared import (
    OutputFormat,
    app,
    constants_option,
    csv_text,
    emit,
    fail,
    format_option,
    handle_errors,
    length_list,
    length_value,
    load_table,
    new_report,
    out_option,
    sub_app,
)

hydrogen_app = sub_app("Hydrogen energy budget and the coupling η.")
app.add_typer(hydrogen_app, name="hydrogen")


@hydrogen_app.command("report", help="Energy budget, oscillation amplitude, η and the ħ candidate.")
def report_cmd(
    n: int = typer.Option(1, "--n", help="Principal quantum number.", min=1),
    rp: str = typer.Option("1.4fm", "--rp", help="Proton radius, e.g. 1.4fm."),
    convention: str = typer.Option(
        "free_energy",
        "--convention",
        help="How u_1 is fixed: free_energy (ħω_H = M_e u_1²) or ionization (½M_e u_1² = 13.6 eV).",
    ),
    constants: Path | None = constants_option(),
    fmt: OutputFormat = format_option(),
    out: Path | None = out_option(),
):
    table = load_table(constants)
    radius = length_value(rp, "--rp")
    if convention not in ("free_energy", "ionization"):
        fail(f"--convention: expected free_energy or ionization, got {convention!r}")
    with handle_errors():
        model = HydrogenModel.from_constants(table, n=n, R_p=radius, convention=convention)
        budget = energy_budget(model)
        eta = eta_from_model(model)
        candidate = hbar_candidate(model)
        oscillation = oscillation_from_model(model)
        x_matched = solve_amplitude_x(model)

    eV = table.eV
    report = new_report("hydrogen report", table, n=n, rp=rp, convention=convention)
    report.add("nu_H", model.nu_H, units="Hz", source="config")
    report.add("R_H", model.R_H, units="m", note=f"u_1/nu_H ({convention} convention)")
    report.add("u_n", u_n(model), units="m s^-1")
    report.add("rho0", rho0(model), units="kg m^-1", note="M_e/(2 pi R_H)")
    report.add("x", oscillation_amplitude_x(model), note="M_e/((2 pi)^2 M_p n)")
    report.add("x_amplitude_matched", x_matched, note="electron and proton field amplitudes equated")
    report.add("d_over_Rp", oscillation.d / model.R_p, source="REFERENCE", note="below 1e-5")
    report.add("q_D_amplitude", dynamic_charge_amplitude(oscillation), units="J m^-2")
    report.add("W_el_eV", budget.W_el / eV, units="eV", source="REFERENCE", note="13.6 eV")
    report.add("W_el_quadrature_eV", budget.W_el_quadrature / eV, units="eV", note=f"kappa = {budget.kappa}")
    report.add("W_free_eV", budget.W_free / eV, units="eV", source="REFERENCE", note="hbar omega_H")
    report.add("delta_W_eV", budget.delta_W / eV, units="eV", source="REFERENCE", note="13.6 eV")
    report.add("W_rad_eV", budget.W_rad / eV, units="eV", note="period and shell integral R_p..R_H")
    report.add("W_rad_closed_form_eV", budget.W_rad_closed_form / eV, units="eV")
    report.add("half_hbar_omega_eV", budget.half_hbar_omega / eV, units="eV")
    report.add("kappa", budget.kappa, note="normalisation of the electron volume integral")
    report.add("radiation_sign", budget.radiation_sign, note="magnitude is used")
    report.add("identity_closed", budget.identity_closed, units=None, note="W_free - W_el = W_rad = hbar omega_H / 2")
    report.add("eta", eta.eta, units="N m^-4")
    report.add("eta_R_p", eta.eta * model.R_p, units="N m^-3", source="REFERENCE", note="1.78e20")
    report.add("hbar_candidate", candidate.value, units="N^-1 m^4", note="4 pi / eta")
    report.add("hbar_candidate_in_window", candidate.in_window, units=None)
    report.add("hbar", table.hbar, units="J s", source="config")
    emit(report, fmt, out)


async def _candidate_one(model: HydrogenModel, radius: float) -> HbarCandidate:
    return await asyncio.to_thread(hbar_candidate, model, radius)


async def _candidate_all(model: HydrogenModel, radii: list[float]) -> list[HbarCandidate]:
    """Evaluate every radius concurrently; results keep submission order."""
    return await asyncio.gather(*[_candidate_one(model, radius) for radius in radii])


def _label(radius: float) -> str:
    return f"{radius / FERMI:.4g}fm"


@app.command("hbar-derive", help="Compare 4π/η with ħ for several proton radii.")
def hbar_derive_cmd(
    rp: str = typer.Option("1.3fm,1.4fm,1.5fm", "--rp", help="Comma-separated proton radii."),
    profile: bool = typer.Option(True, "--profile/--no-profile", help="Add the 1/e radius of the density profile."),
    constants: Path | None = constants_option(),
    fmt: OutputFormat = format_option(),
    out: Path | None = out_option(),
):
    table: ConstantsTable = load_table(constants)
    radii = length_list(rp, "--rp")
    with handle_errors():
        model = HydrogenModel.from_constants(table)
        if profile:
            radii.append(proton_radius_from_profile())
        candidates = asyncio.run(_candidate_all(model, radii))

    report = new_report("hbar-derive", table, rp=rp, profile=profile)
    if profile:
        report.add("profile_radius", radii[-1], units="m", source="REFERENCE", note="1/e density radius, 1.3-1.4 fm")
    rows = Table(title="4π/η against ħ")
    for column in ("R_p", "4π/η [1e-34]", "ratio to ħ", "window"):
        rows.add_column(column, justify="right")
    csv_rows = []
    for candidate in candidates:
        label = _label(candidate.R_p)
        ratio = candidate.value / table.hbar
        report.add(f"hbar_candidate[{label}]", candidate.value, units="N^-1 m^4", source="REFERENCE")
        report.add(f"ratio_to_hbar[{label}]", ratio)
        window = "ok" if candidate.in_window else "outside"
        rows.add_row(label, f"{candidate.value / 1e-34:.2f}", f"{ratio:.4f}", window)
        csv_rows.append([repr(candidate.R_p), repr(candidate.value), repr(ratio), str(candidate.in_window)])
    report.add("hbar", table.hbar, units="J s", source="config")
    body = csv_text(["R_p", "hbar_candidate", "ratio_to_hbar", "in_window"], csv_rows)
    emit(report, fmt, out, table=rows, csv_body=body)
