"""Tests for the solar gravity-wave estimate."""

from __future__ import annotations

import math

import pytest
from pydantic import ValidationError

from app.constants import ConstantsTable
from app.errors import DomainError
from app.gravity import (
    BAND_HZ,
    OrbitalBody,
    earth_body,
    gravity_dimension_audit,
    gravity_energy_density,
    gravity_field_amplitude,
    gravity_flux,
    gravity_frequency_band,
)


@pytest.fixture
def earth(default_table: ConstantsTable) -> OrbitalBody:
    return earth_body(default_table)


def _flux(body: OrbitalBody, table: ConstantsTable, hbar: float | None = None) -> float:
    return gravity_flux(body, table.N_A, table.c, table.hbar if hbar is None else hbar)


# ---------------------------------------------------------------------------
# frequency band
# ---------------------------------------------------------------------------


def test_default_ratio_lands_in_band():
    band = gravity_frequency_band(6.57e15)
    assert band.nu_G == pytest.approx(65700.0)
    assert band.in_band is True
    assert (band.band_low, band.band_high) == BAND_HZ


def test_larger_ratio_leaves_band():
    band = gravity_frequency_band(6.57e15, 1e-9)
    assert band.nu_G == pytest.approx(6.57e6)
    assert band.in_band is False


def test_zero_ratio_is_allowed():
    assert gravity_frequency_band(6.57e15, 0.0).nu_G == 0.0


@pytest.mark.parametrize(("nu_E", "ratio"), [(0.0, 1e-11), (-1.0, 1e-11), (6.57e15, -1e-11)])
def test_band_rejects_bad_inputs(nu_E: float, ratio: float):
    with pytest.raises(DomainError):
        gravity_frequency_band(nu_E, ratio)


# ---------------------------------------------------------------------------
# field, energy density and flux
# ---------------------------------------------------------------------------


def test_earth_field_amplitude(earth: OrbitalBody):
    assert gravity_field_amplitude(earth) / (4 * math.pi) == pytest.approx(2.6020, rel=1e-4)


def test_earth_field_is_mean_density_times_acceleration(earth: OrbitalBody):
    density = 3 * earth.M / (4 * math.pi * earth.R_body**3)
    acceleration = (2 * math.pi / earth.tau) ** 2 * earth.R_orbit
    assert gravity_field_amplitude(earth) == pytest.approx(density * acceleration, rel=1e-12)


def test_earth_energy_density_and_flux(earth: OrbitalBody, default_table: ConstantsTable):
    assert gravity_energy_density(earth, default_table.hbar) == pytest.approx(3.570e-34, rel=1e-3)

    flux = _flux(earth, default_table)

    assert flux == pytest.approx(0.06445, rel=1e-3)
    assert 0.055 <= flux <= 0.080


def test_flux_is_linear_in_hbar(earth: OrbitalBody, default_table: ConstantsTable):
    assert _flux(earth, default_table, 2 * default_table.hbar) == pytest.approx(2 * _flux(earth, default_table))


def test_flux_unchanged_when_mass_and_radius_scale_together(earth: OrbitalBody, default_table: ConstantsTable):
    """M → 8M with R → 2R keeps the mean density, so the flux is bit-identical."""
    scaled = earth.model_copy(update={"M": 8 * earth.M, "R_body": 2 * earth.R_body})
    assert _flux(scaled, default_table) == _flux(earth, default_table)


def test_massless_body_has_no_flux(earth: OrbitalBody, default_table: ConstantsTable):
    assert _flux(earth.model_copy(update={"M": 0.0}), default_table) == 0.0


# ---------------------------------------------------------------------------
# OrbitalBody validation
# ---------------------------------------------------------------------------


def test_body_must_fit_inside_its_orbit():
    with pytest.raises(ValidationError, match="smaller than R_orbit"):
        OrbitalBody(M=1.0, R_body=2.0, R_orbit=2.0, tau=1.0)


@pytest.mark.parametrize("field", ["tau", "R_body", "R_orbit"])
def test_body_rejects_non_positive_lengths_and_period(field: str):
    values = {"M": 1.0, "R_body": 1.0, "R_orbit": 10.0, "tau": 1.0} | {field: 0.0}
    with pytest.raises(ValidationError):
        OrbitalBody(**values)


def test_body_rejects_negative_mass():
    with pytest.raises(ValidationError):
        OrbitalBody(M=-1.0, R_body=1.0, R_orbit=10.0, tau=1.0)


# ---------------------------------------------------------------------------
# dimension audit
# ---------------------------------------------------------------------------


def test_dimension_audit_is_consistent():
    audit = gravity_dimension_audit()
    assert list(audit) == ["G_S", "phi_G", "J_G"]
    assert all(report.consistent for report in audit.values())
