"""Gravity command: gravity flux."""

from __future__ import annotations

import math
from enum import StrEnum
from pathlib import Path

import typer

from ..gravity import (
    DEFAULT_FREQUENCY_RATIO,
    SOLAR_RADIATION_W_M2,
    OrbitalBody,
    earth_body,
    gravity_dimension_audit,
    gravity_energy_density,
    gravity_field_amplitude,
    gravity_flux,
    gravity_frequency_band,
)
from ._shared import (
    OutputFormat,
    app,
    constants_option,
    emit,
    format_option,
    handle_errors,
    length_value,
    load_table,
    new_report,
    out_option,
    sub_app,
)

gravity_app = sub_app("Solar gravity-wave estimate at the Earth's orbit.")
app.add_typer(gravity_app, name="gravity")


class Body(StrEnum):
    EARTH = "earth"


def _length(text: str | None, flag: str) -> float | None:
    return None if text is None else length_value(text, flag, default_unit="m")


@gravity_app.command("flux", help="ν_G band, G_S, φ_G and the flux J_G = φ_G N_A c.")
def flux_cmd(
    body: Body = typer.Option(Body.EARTH, "--body", help="Preset orbital body; the options below override it."),
    mass: float | None = typer.Option(None, "--mass", help="Body mass in kg.", min=0),
    radius: str | None = typer.Option(None, "--radius", help="Body radius (metres unless a unit is given)."),
    orbit: str | None = typer.Option(None, "--orbit", help="Orbit radius (metres unless a unit is given)."),
    period: float | None = typer.Option(None, "--period", help="Orbital period in seconds."),
    ratio: float = typer.Option(DEFAULT_FREQUENCY_RATIO, "--ratio", help="ν_G / ν_E."),
    nu_e: float | None = typer.Option(None, "--nu-e", help="Source frequency ν_E in Hz (default: ν_H)."),
    hbar: float | None = typer.Option(None, "--hbar", help="ħ in N^-1 m^4 (default: h/2π from the constants)."),
    constants: Path | None = constants_option(),
    fmt: OutputFormat = format_option(),
    out: Path | None = out_option(),
):
    table = load_table(constants)
    overrides = {
        "M": mass,
        "R_body": _length(radius, "--radius"),
        "R_orbit": _length(orbit, "--orbit"),
        "tau": period,
    }
    hbar_value = table.hbar if hbar is None else hbar
    with handle_errors():
        preset = earth_body(table)
        orbital = OrbitalBody(**(preset.model_dump() | {k: v for k, v in overrides.items() if v is not None}))
        band = gravity_frequency_band(table.nu_H if nu_e is None else nu_e, ratio)
        field = gravity_field_amplitude(orbital)
        density = gravity_energy_density(orbital, hbar_value)
        flux = gravity_flux(orbital, table.N_A, table.c, hbar_value)
    audit = gravity_dimension_audit()

    report = new_report(
        "gravity flux",
        table,
        body=body.value,
        mass=mass,
        radius=radius,
        orbit=orbit,
        period=period,
        ratio=ratio,
        nu_e=nu_e,
        hbar=hbar,
    )
    report.add("nu_E", band.nu_E, units="Hz", source="config")
    report.add("nu_G", band.nu_G, units="Hz", source="REFERENCE", note="65.7 kHz")
    report.add("nu_G_band_low", band.band_low, units="Hz", source="REFERENCE")
    report.add("nu_G_band_high", band.band_high, units="Hz", source="REFERENCE")
    report.add("nu_G_in_band", band.in_band, units=None)
    report.add("G_S", field, units="N m^-3", note="rho a_C")
    report.add("G_S_over_4pi", field / (4 * math.pi), units="N m^-3")
    report.add("phi_G", density, units="J m^-3", note="(hbar/2)(G_S/4 pi)^2")
    report.add("J_G", flux, units="W m^-2", source="REFERENCE", note="about 70 mW/m^2")
    report.add("solar_radiation_context", SOLAR_RADIATION_W_M2, units="W m^-2", source="REFERENCE")
    for name, check in audit.items():
        report.add(f"audit.{name}.consistent", check.consistent, units=None, note=check.lhs)
    emit(report, fmt, out)
