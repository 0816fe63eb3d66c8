"""Hydrogen energy budget and the η / ħ derivation from the proton radius.

The electron is a standing radial wave of speed ``u_n`` in an atom of radius
``R_H``; the proton oscillates with amplitude ``x`` so that its field matches
the electron's. The energy the proton radiates into the atom closes the
budget ``W_free - W_el = W_rad = ½ħω_H`` and fixes the coupling η, whose
``4π/η`` is compared with ħ.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.optimize import brentq

from .constants import ConstantsTable, default_constants
from .dynamic_charge import ProtonOscillation
from .errors import DomainError
from .log import get_logger
from .quadrature import integrate_adaptive_simpson, phase_average
from .quantity import ELECTRIC_FIELD, MAGNETIC_FIELD, Quantity
from .unit_systems import EtaCoupling, radiation_energy_density

log = get_logger(__name__)

Convention = Literal["free_energy", "ionization"]

FERMI = 1e-15
DEFAULT_R_P = 1.4 * FERMI
IONIZATION_EV = 13.6
KAPPA = 0.5
RADIATION_SIGN = -1
HBAR_WINDOW = (0.5 * FERMI, 3.0 * FERMI)
PROFILE_CENTER_FM = 1.07
PROFILE_WIDTH_FM = 0.55
PROFILE_BRACKET_FM = (0.0, 5.0)
_LOG_DEPTH = 40.0


def electron_speed(constants: ConstantsTable, convention: Convention = "free_energy") -> float:
    """Ground-state speed u_1.

    ``free_energy``: ħω_H = M_e u_1² (the free-electron energy).
    ``ionization``: ½ M_e u_1² = 13.6 eV.
    """
    if convention == "ionization":
        return math.sqrt(2 * IONIZATION_EV * constants.eV / constants.M_e)
    return math.sqrt(constants.h * constants.nu_H / constants.M_e)


class HydrogenModel(BaseModel):
    """Parameters of the hydrogen pipeline; build with ``from_constants``."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(default=1, ge=1)
    nu_H: float = Field(gt=0)
    R_H: float = Field(gt=0)
    R_p: float = Field(default=DEFAULT_R_P, gt=0)
    convention: Convention = "free_energy"
    constants: ConstantsTable = Field(default_factory=default_constants)

    @model_validator(mode="after")
    def _check_scale(self) -> HydrogenModel:
        if not self.R_p < self.R_H / 100:
            raise ValueError(f"R_p ({self.R_p:g} m) must be below R_H/100 ({self.R_H / 100:g} m)")
        return self

    @classmethod
    def from_constants(
        cls,
        constants: ConstantsTable | None = None,
        *,
        n: int = 1,
        R_p: float = DEFAULT_R_P,
        convention: Convention = "free_energy",
        R_H: float | None = None,
    ) -> HydrogenModel:
        constants = constants or default_constants()
        if R_H is None:
            R_H = electron_speed(constants, convention) / constants.nu_H
        return cls(n=n, nu_H=constants.nu_H, R_H=R_H, R_p=R_p, convention=convention, constants=constants)

    @property
    def omega_H(self) -> float:
        return 2 * math.pi * self.nu_H

    def with_proton_radius(self, R_p: float) -> HydrogenModel:
        return HydrogenModel(**(dict(self) | {"R_p": R_p}))


def _check_n(n: int) -> int:
    if n < 1:
        raise DomainError(f"principal quantum number must be >= 1, got {n}")
    return n


def _check_r(r: float | np.ndarray) -> None:
    if np.any(np.asarray(r) <= 0):
        raise DomainError("r must be positive")


def u_n(model: HydrogenModel, n: int | None = None) -> float:
    """u_n = ω_H R_H / (2πn) = ν_H R_H / n."""
    return model.nu_H * model.R_H / _check_n(model.n if n is None else n)


def rho0(model: HydrogenModel) -> float:
    """Linear density amplitude M_e / (2π R_H), in kg m^-1."""
    return model.constants.M_e / (2 * math.pi * model.R_H)


def momentum_density(model: HydrogenModel, r: float | np.ndarray, t: float | np.ndarray) -> float | np.ndarray:
    """Radial component (ρ0 u_n / r²) cos ω_H t."""
    _check_r(r)
    return rho0(model) * u_n(model) / r**2 * np.cos(model.omega_H * t)


def electron_field_E0(model: HydrogenModel, r: float | np.ndarray, t: float | np.ndarray) -> float | np.ndarray:
    """∂p/∂t = -(ρ0 u_n / r²) ω_H sin ω_H t."""
    _check_r(r)
    return -rho0(model) * u_n(model) / r**2 * model.omega_H * np.sin(model.omega_H * t)


def oscillation_amplitude_x(model: HydrogenModel, n: int | None = None) -> float:
    """x = M_e / ((2π)² M_p n)."""
    n = _check_n(model.n if n is None else n)
    return model.constants.M_e / ((2 * math.pi) ** 2 * model.constants.M_p * n)


def proton_field_E0(
    model: HydrogenModel, r: float | np.ndarray, t: float | np.ndarray, x: float | None = None
) -> float | np.ndarray:
    """(M_p ω_H² x / r²) sin ω_H t."""
    _check_r(r)
    x = oscillation_amplitude_x(model) if x is None else x
    return model.constants.M_p * model.omega_H**2 * x / r**2 * np.sin(model.omega_H * t)


def solve_amplitude_x(model: HydrogenModel, n: int | None = None) -> float:
    """x from equating the electron and proton field amplitudes, by bracketed root finding.

    Both amplitudes fall off as 1/r², so the match is evaluated at R_H.
    """
    n = _check_n(model.n if n is None else n)
    r = model.R_H
    electron = rho0(model) * u_n(model, n) * model.omega_H / r**2

    def mismatch(x: float) -> float:
        return model.constants.M_p * model.omega_H**2 * x / r**2 / electron - 1.0

    return float(brentq(mismatch, 0.0, 1.0, xtol=1e-30, rtol=1e-14))


def oscillation_from_model(model: HydrogenModel) -> ProtonOscillation:
    """Proton oscillation with d = x R_p / 3."""
    x = oscillation_amplitude_x(model)
    return ProtonOscillation(R_p=model.R_p, d=x * model.R_p / 3, omega_H=model.omega_H, M_p=model.constants.M_p)


def wavevector(model: HydrogenModel) -> float:
    return 2 * math.pi * model.n / model.R_H


def energy_densities(
    model: HydrogenModel, r: float | np.ndarray, t: float | np.ndarray
) -> tuple[float | np.ndarray, float | np.ndarray]:
    """Kinetic and field components (φ_K, φ_EM) of the electron's energy density."""
    _check_r(r)
    k = wavevector(model)
    envelope = rho0(model) * u_n(model) ** 2 / r**2 * np.cos(model.omega_H * t) ** 2
    return envelope * np.sin(k * r) ** 2, envelope * np.cos(k * r) ** 2


# --- energies -------------------------------------------------------------------


class ElectronEnergy(BaseModel):
    W_el: float
    W_el_quadrature: float
    W_free: float
    delta_W: float
    kappa: float = KAPPA


def _time_factor(density: Callable[[float], float], omega: float, peak: float, numerical: bool) -> float:
    """Period mean of ``density(t) / density(peak)``; ½ for both cos² and sin² envelopes."""
    if not numerical:
        return 0.5
    at_peak = density(peak)
    return phase_average(lambda th: density(th / omega) / at_peak)


def _electron_shell_density(model: HydrogenModel, r: float, t: float) -> float:
    kinetic, field = energy_densities(model, r, t)
    return float(kinetic + field)


def electron_energy(model: HydrogenModel, numerical_time_average: bool = False) -> ElectronEnergy:
    """W_el = κ × (volume and period integral of φ_K + φ_EM) with κ = ½, W_free = ħω_H.

    The naive integral equals M_e u²; κ brings it to the bound-electron energy
    ½ M_e u². The shell integral ∫₀^R_H 4πr² (φ_K + φ_EM) dr is taken at t = 0
    over v = ln(R_H/r) in [0, 40], which leaves out a fraction e⁻⁴⁰ at the
    centre.
    """
    u = u_n(model)

    def shell(v: float) -> float:
        r = model.R_H * math.exp(-v)
        return 4 * math.pi * r**3 * _electron_shell_density(model, r, 0.0)

    spatial = integrate_adaptive_simpson(shell, 0.0, _LOG_DEPTH, abs_tol=0.0).value
    cos2 = _time_factor(
        lambda t: _electron_shell_density(model, model.R_H, t), model.omega_H, 0.0, numerical_time_average
    )
    w_quad = KAPPA * spatial * cos2
    w_el = 0.5 * model.constants.M_e * u**2
    if abs(w_quad - w_el) > 1e-6 * w_el:
        log.warning("W_el quadrature %.9e J differs from closed form %.9e J", w_quad, w_el)
    w_free = model.constants.hbar * model.omega_H
    return ElectronEnergy(W_el=w_el, W_el_quadrature=w_quad, W_free=w_free, delta_W=w_free - w_el)


def field_amplitude(model: HydrogenModel, x: float | None = None) -> float:
    """A = M_p ω_H² x, so that E0 = A sin(ω_H t) / r²."""
    x = oscillation_amplitude_x(model) if x is None else x
    return model.constants.M_p * model.omega_H**2 * x


def eta_from_model(model: HydrogenModel) -> EtaCoupling:
    """η = M_e² ν_H³ / (2 h R_p)."""
    if model.R_p <= 0:
        raise DomainError("R_p must be positive")
    c = model.constants
    return EtaCoupling(eta=c.M_e**2 * model.nu_H**3 / (2 * c.h * model.R_p))


def radiation_energy_closed_form(
    model: HydrogenModel, eta: EtaCoupling | None = None, r_outer: float | None = None, x: float | None = None
) -> float:
    """(A² / 4η)(1/R_p - 1/r_outer)."""
    eta = eta or eta_from_model(model)
    r_outer = model.R_H if r_outer is None else r_outer
    return field_amplitude(model, x) ** 2 / (4 * eta.eta) * (1 / model.R_p - 1 / r_outer)


def radiation_density(
    model: HydrogenModel,
    r: float | np.ndarray,
    t: float,
    eta: EtaCoupling | None = None,
    x: float | None = None,
) -> float | np.ndarray:
    """φ_Rad = E0² / (8πη) for the proton field E0(r, t), with no magnetic part, in J m^-3."""
    _check_r(r)
    eta = eta or eta_from_model(model)
    zero_b = Quantity(0.0, MAGNETIC_FIELD)

    def at(radius: float) -> float:
        e0 = Quantity(float(proton_field_E0(model, radius, t, x)), ELECTRIC_FIELD)
        return float(radiation_energy_density(e0, zero_b, eta, model.constants.c).magnitude)

    if np.ndim(r) == 0:
        return at(float(r))
    return np.array([at(float(radius)) for radius in np.ravel(r)]).reshape(np.shape(r))


def radiation_energy(
    model: HydrogenModel,
    eta: EtaCoupling | None = None,
    r_outer: float | None = None,
    x: float | None = None,
    numerical_time_average: bool = False,
) -> float:
    """Period-averaged radiation energy between R_p and ``r_outer`` (default R_H).

    The shell integral ∫ 4πr² φ_Rad dr is taken at the field's peak, a quarter
    period, over u = ln(r/R_p), then scaled by the period mean of sin²(ω_H t).
    """
    eta = eta or eta_from_model(model)
    r_outer = model.R_H if r_outer is None else r_outer
    if r_outer <= model.R_p:
        raise DomainError("r_outer must exceed R_p")
    if field_amplitude(model, x) == 0:
        return 0.0
    peak = 0.25 / model.nu_H

    def shell(u: float) -> float:
        r = model.R_p * math.exp(u)
        return 4 * math.pi * r**3 * radiation_density(model, r, peak, eta, x)

    spatial = integrate_adaptive_simpson(shell, 0.0, math.log(r_outer / model.R_p), abs_tol=0.0).value
    sin2 = _time_factor(
        lambda t: radiation_density(model, model.R_p, t, eta, x), model.omega_H, peak, numerical_time_average
    )
    return spatial * sin2


class EnergyBudget(BaseModel):
    """Energies of the hydrogen atom, in joules."""

    W_el: float
    W_el_quadrature: float
    W_free: float
    delta_W: float
    W_rad: float
    W_rad_closed_form: float
    half_hbar_omega: float
    kappa: float = KAPPA
    radiation_sign: int = RADIATION_SIGN
    identity_closed: bool

    def relative_gaps(self) -> dict[str, float]:
        """Pairwise relative differences of the identity chain."""
        ref = self.half_hbar_omega
        return {
            "delta_W-W_rad": abs(self.delta_W - self.W_rad) / ref,
            "W_rad-half_hbar_omega": abs(self.W_rad - ref) / ref,
            "delta_W-half_hbar_omega": abs(self.delta_W - ref) / ref,
        }


def energy_budget(model: HydrogenModel, eta: EtaCoupling | None = None, rel_tol: float = 1e-4) -> EnergyBudget:
    electron = electron_energy(model)
    eta = eta or eta_from_model(model)
    w_rad = radiation_energy(model, eta)
    half = 0.5 * model.constants.hbar * model.omega_H
    budget = EnergyBudget(
        W_el=electron.W_el,
        W_el_quadrature=electron.W_el_quadrature,
        W_free=electron.W_free,
        delta_W=electron.delta_W,
        W_rad=w_rad,
        W_rad_closed_form=radiation_energy_closed_form(model, eta),
        half_hbar_omega=half,
        identity_closed=False,
    )
    closed = all(gap <= rel_tol for gap in budget.relative_gaps().values())
    if not closed:
        log.warning("energy identity open beyond %.0e: %s", rel_tol, budget.relative_gaps())
    return budget.model_copy(update={"identity_closed": closed})


# --- Planck constant from the proton radius -------------------------------------


class HbarCandidate(BaseModel):
    R_p: float
    eta: float
    value: float
    in_window: bool


def hbar_candidate(model: HydrogenModel, R_p: float | None = None) -> HbarCandidate:
    """4π/η at ``R_p`` (default: the model's), in N^-1 m^4.

    Radii outside 0.5-3 fm are computed but flagged.
    """
    R_p = model.R_p if R_p is None else R_p
    if R_p <= 0:
        raise DomainError("R_p must be positive")
    eta = eta_from_model(model.with_proton_radius(R_p))
    in_window = HBAR_WINDOW[0] <= R_p <= HBAR_WINDOW[1]
    if not in_window:
        log.warning("R_p = %.4g fm lies outside the 0.5-3 fm sanity window", R_p / FERMI)
    return HbarCandidate(R_p=R_p, eta=eta.eta, value=eta.hbar, in_window=in_window)


def proton_profile(r_fm: float | np.ndarray) -> float | np.ndarray:
    """Relative proton density 1 / (1 + exp((r - 1.07)/0.55)), r in fm."""
    return 1.0 / (1.0 + np.exp((r_fm - PROFILE_CENTER_FM) / PROFILE_WIDTH_FM))


def proton_radius_from_profile(threshold: float = 1 / math.e) -> float:
    """Radius in metres where the relative density drops to ``threshold``."""
    lo, hi = PROFILE_BRACKET_FM
    upper, lower = float(proton_profile(lo)), float(proton_profile(hi))
    if not lower < threshold < upper:
        raise DomainError(f"threshold must lie in ({lower:.4g}, {upper:.4g}), got {threshold}")
    root_fm = brentq(lambda r: float(proton_profile(r)) - threshold, lo, hi, xtol=1e-9)
    return float(root_fm) * FERMI


def proton_radius_closed_form(threshold: float = 1 / math.e) -> float:
    """Inverse of the logistic profile, in metres."""
    return (PROFILE_CENTER_FM + PROFILE_WIDTH_FM * math.log(1 / threshold - 1)) * FERMI
