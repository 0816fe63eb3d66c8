"""Oscillating proton: radius, density and the dynamic charge it carries.

The proton radius pulses as ``R(t) = R_p + d sin(ω t)``. To first order in
``x = 3d/R_p`` its density is ``ρ0 (1 - x sin ω t)`` and the second time
derivative of that density acts as a charge density; integrated over the
proton it gives ``q_D(t) = β x M_p ω² sin ω t``.
"""

from __future__ import annotations

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .constants import ConstantsTable
from .errors import DomainError, GridError
from .poisson import RadialGrid, UniformSphereSource

ArrayLike = float | np.ndarray


class ProtonOscillation(BaseModel):
    """Monopole oscillation of a homogeneous proton."""

    model_config = ConfigDict(frozen=True)

    R_p: float = Field(gt=0)
    d: float = Field(ge=0)
    omega_H: float = Field(gt=0)
    M_p: float = Field(gt=0)
    beta: float = 1.0

    @model_validator(mode="after")
    def _check_amplitude(self) -> ProtonOscillation:
        if not self.d < self.R_p:
            raise ValueError(f"amplitude d ({self.d}) must be smaller than R_p ({self.R_p})")
        return self

    @classmethod
    def from_constants(
        cls, constants: ConstantsTable, R_p: float, d: float, beta: float = 1.0
    ) -> ProtonOscillation:
        return cls(R_p=R_p, d=d, omega_H=2 * math.pi * constants.nu_H, M_p=constants.M_p, beta=beta)

    @property
    def x(self) -> float:
        return 3 * self.d / self.R_p

    @property
    def period(self) -> float:
        return 2 * math.pi / self.omega_H

    @property
    def rho0(self) -> float:
        """Equilibrium mass density 3M_p / (4π R_p³)."""
        return 3 * self.M_p / (4 * math.pi * self.R_p**3)


def radius_at(p: ProtonOscillation, t: ArrayLike) -> ArrayLike:
    return p.R_p + p.d * np.sin(p.omega_H * t)


def density_exact(p: ProtonOscillation, t: ArrayLike) -> ArrayLike:
    """3M_p / (4π R(t)³), mass-conserving at every instant."""
    return 3 * p.M_p / (4 * math.pi * radius_at(p, t) ** 3)


def density_first_order(p: ProtonOscillation, t: ArrayLike) -> ArrayLike:
    return p.rho0 * (1 - p.x * np.sin(p.omega_H * t))


def density_fluctuation(p: ProtonOscillation, t: ArrayLike) -> ArrayLike:
    """First-order density minus ρ0."""
    return -p.rho0 * p.x * np.sin(p.omega_H * t)


def density_second_derivative(p: ProtonOscillation, t: ArrayLike) -> ArrayLike:
    """∂²ρ/∂t² of the first-order density: ρ0 x ω² sin ω t."""
    return p.rho0 * p.x * p.omega_H**2 * np.sin(p.omega_H * t)


def dynamic_charge_q(p: ProtonOscillation, t: ArrayLike) -> ArrayLike:
    """q_D(t) = β x M_p ω² sin ω t."""
    return p.beta * p.x * p.M_p * p.omega_H**2 * np.sin(p.omega_H * t)


def dynamic_charge_amplitude(p: ProtonOscillation) -> float:
    return p.beta * p.x * p.M_p * p.omega_H**2


def dynamic_charge_source(p: ProtonOscillation, t: float) -> UniformSphereSource:
    """β ∂²ρ/∂t² as a uniform sphere on the equilibrium radius.

    The support change from R_p to R(t) is second order in x and is dropped,
    so the source's total charge is exactly ``dynamic_charge_q(p, t)``.
    """
    return UniformSphereSource(radius=p.R_p, rho=p.beta * float(density_second_derivative(p, t)))


def poisson_source(
    p: ProtonOscillation, t: float, grid: RadialGrid, static_sigma: np.ndarray | None = None
) -> np.ndarray:
    """σ(r) + β ∂²ρ/∂t² sampled on ``grid``; the dynamic part is non-zero for r ≤ R_p."""
    r = grid.nodes()
    dynamic = dynamic_charge_source(p, t).density(r)
    if static_sigma is None:
        return dynamic
    static = np.asarray(static_sigma, dtype=float)
    if static.shape != r.shape:
        raise GridError(f"static source has {static.size} values, grid has {r.size} nodes")
    return static + dynamic


def sample_charge(
    p: ProtonOscillation, t0: float = 0.0, samples: int = 1, span: float | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """``samples`` equally spaced instants in ``[t0, t0 + span)`` and q_D at each.

    ``span`` defaults to one period, so the samples average q_D to zero.
    """
    if samples < 1:
        raise DomainError(f"samples must be >= 1, got {samples}")
    width = p.period if span is None else span
    t = t0 + width * np.arange(samples) / samples
    return t, np.asarray(dynamic_charge_q(p, t), dtype=float)
