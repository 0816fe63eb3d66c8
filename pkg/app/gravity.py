"""Solar gravity-wave estimate at the Earth's orbit.

A body of mean density ρ = 3M/(4πR³) accelerated centripetally by
a = ω²R_orbit (ω = 2π/τ, the orbital frequency) carries the field
``G_S = ρ a``. Its energy density is ``φ_G = (ħ/2)(G_S/4π)²`` and, scaled
from the atomic to the molar level by N_A and moving at c, it gives the flux
``J_G = φ_G N_A c``.
"""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .constants import ConstantsTable
from .errors import DomainError
from .models import ConsistencyReport
from .quantity import ENERGY_DENSITY, VELOCITY, check_equation_dims, parse_unit_expr

DEFAULT_FREQUENCY_RATIO = 1e-11
BAND_HZ = (1e3, 1e5)
SOLAR_RADIATION_W_M2 = 300.0


class OrbitalBody(BaseModel):
    """A body on a circular orbit around the Sun."""

    model_config = ConfigDict(frozen=True)

    M: float = Field(ge=0)
    R_body: float = Field(gt=0)
    R_orbit: float = Field(gt=0)
    tau: float = Field(gt=0)

    @model_validator(mode="after")
    def _check_radii(self) -> OrbitalBody:
        if not self.R_body < self.R_orbit:
            raise ValueError(f"R_body ({self.R_body}) must be smaller than R_orbit ({self.R_orbit})")
        return self


def earth_body(constants: ConstantsTable) -> OrbitalBody:
    return OrbitalBody(M=constants.M_E, R_body=constants.R_E, R_orbit=constants.R_O, tau=constants.tau_E)


class GravityBand(BaseModel):
    nu_E: float
    ratio: float
    nu_G: float
    band_low: float = BAND_HZ[0]
    band_high: float = BAND_HZ[1]

    @property
    def in_band(self) -> bool:
        return self.band_low <= self.nu_G <= self.band_high


def gravity_frequency_band(nu_E: float, ratio: float = DEFAULT_FREQUENCY_RATIO) -> GravityBand:
    """ν_G = ratio × ν_E, reported against the 1-100 kHz band."""
    if nu_E <= 0:
        raise DomainError(f"nu_E must be positive, got {nu_E}")
    if ratio < 0:
        raise DomainError(f"ratio must be non-negative, got {ratio}")
    return GravityBand(nu_E=nu_E, ratio=ratio, nu_G=ratio * nu_E)


def _normalised_field(body: OrbitalBody) -> float:
    """G_S / 4π = 3 M R_orbit / (4 R_body³ τ²)."""
    mean_density_ratio = body.M / (body.R_body * body.R_body * body.R_body)
    return 3 * mean_density_ratio * body.R_orbit / (4 * body.tau * body.tau)


def gravity_field_amplitude(body: OrbitalBody) -> float:
    """G_S = ρ a_C in kg m^-2 s^-2 (N m^-3)."""
    return 4 * math.pi * _normalised_field(body)


def gravity_energy_density(body: OrbitalBody, hbar: float) -> float:
    """φ_G = (ħ/2)(G_S/4π)², J m^-3 with ħ in N^-1 m^4."""
    return hbar / 2 * _normalised_field(body) ** 2


def gravity_flux(body: OrbitalBody, N_A: float, c: float, hbar: float) -> float:
    """J_G = φ_G N_A c in W m^-2; N_A enters as a pure number."""
    return gravity_energy_density(body, hbar) * N_A * c


def gravity_dimension_audit() -> dict[str, ConsistencyReport]:
    """Dimension checks of the energy density and flux with ħ in N^-1 m^4 and N_A dimensionless."""
    hbar = parse_unit_expr("N^-1 m^4").dim
    field = parse_unit_expr("N m^-3").dim
    avogadro = parse_unit_expr("1").dim
    flux = parse_unit_expr("W m^-2").dim
    density = parse_unit_expr("kg m^-3").dim
    acceleration = parse_unit_expr("m s^-2").dim
    return {
        "G_S": check_equation_dims(field, [density * acceleration]),
        "phi_G": check_equation_dims(ENERGY_DENSITY, [hbar * field**2]),
        "J_G": check_equation_dims(flux, [ENERGY_DENSITY * avogadro * VELOCITY]),
    }
