"""Electromagnetic unit systems and the natural-system force and energy formulas.

Each system is described by four Maxwell constants ``(k1, k2, k3, alpha)``:
``k1`` multiplies the source in Gauss's law, ``k2`` the current in the
Biot-Savart law, ``k3`` the time derivative of B in Faraday's law and
``alpha`` the factor in Ampère's law. They are kept as sympy expressions
over the atoms c, epsilon, mu and pi so relations between them can be
checked exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
import sympy as sp
from pydantic import BaseModel, ConfigDict, Field

from .errors import DimensionError
from .models import ConsistencyReport
from .quantity import (
    CHARGE,
    ELECTRIC_FIELD,
    ENERGY_DENSITY,
    ETA,
    FORCE,
    LENGTH,
    MAGNETIC_FIELD,
    VELOCITY,
    Dimension,
    Quantity,
    check_equation_dims,
    format_dimension,
    natural_reduce,
)

c, epsilon, mu = sp.symbols("c epsilon mu", positive=True)
pi = sp.pi

FINE_STRUCTURE_REFERENCE = 7.2973525693e-3


class SystemName(StrEnum):
    ESU = "esu"
    EMU = "emu"
    GAUSSIAN = "gaussian"
    HEAVISIDE_LORENTZ = "heaviside_lorentz"
    SI = "si"
    NATURAL = "natural"


@dataclass(frozen=True)
class UnitSystemSpec:
    name: SystemName
    k1: sp.Expr
    k2: sp.Expr
    k3: sp.Expr
    alpha: sp.Expr

    def constants(self) -> tuple[sp.Expr, sp.Expr, sp.Expr, sp.Expr]:
        return (self.k1, self.k2, self.k3, self.alpha)

    def consistency_ratio(self) -> sp.Expr:
        """k1 / (k2 k3 alpha) with mu eliminated through epsilon mu = c^-2."""
        ratio = self.k1 / (self.k2 * self.k3 * self.alpha)
        return sp.simplify(ratio.subs(mu, 1 / (c**2 * epsilon)))

    def is_consistent(self) -> bool:
        return sp.simplify(self.consistency_ratio() - c**2) == 0

    def as_row(self) -> dict[str, str]:
        return {
            "system": self.name.value,
            "k1": sp.sstr(self.k1),
            "k2": sp.sstr(self.k2),
            "k3": sp.sstr(self.k3),
            "alpha": sp.sstr(self.alpha),
            "k1/(k2*k3*alpha)": sp.sstr(self.consistency_ratio()),
        }


_ONE = sp.Integer(1)

_TABLE: dict[SystemName, tuple[sp.Expr, sp.Expr, sp.Expr, sp.Expr]] = {
    SystemName.ESU: (_ONE, c**-2, _ONE, _ONE),
    SystemName.EMU: (c**2, _ONE, _ONE, _ONE),
    SystemName.GAUSSIAN: (_ONE, c**-2, c, 1 / c),
    SystemName.HEAVISIDE_LORENTZ: (1 / (4 * pi), 1 / (4 * pi * c**2), c, 1 / c),
    SystemName.SI: (1 / (4 * pi * epsilon), mu / (4 * pi), _ONE, _ONE),
    SystemName.NATURAL: (1 / (4 * pi), c**-2, _ONE, 1 / (4 * pi)),
}


def maxwell_constants(name: SystemName | str) -> UnitSystemSpec:
    system = SystemName(name)
    return UnitSystemSpec(system, *_TABLE[system])


def maxwell_table() -> list[UnitSystemSpec]:
    return [maxwell_constants(name) for name in SystemName]


class EtaCoupling(BaseModel):
    """Coupling between electromagnetic and mechanical variables, in N m^-4 (= C m^-3)."""

    model_config = ConfigDict(frozen=True)

    eta: float = Field(gt=0)

    @classmethod
    def from_hbar(cls, hbar: float) -> EtaCoupling:
        """The coupling whose 4π/η equals ``hbar``."""
        return cls(eta=4 * math.pi / hbar)

    @property
    def quantity(self) -> Quantity:
        return Quantity(self.eta, ETA)

    @property
    def hbar(self) -> float:
        return 4 * math.pi / self.eta


def _require(name: str, value: Quantity, expected: Dimension) -> np.ndarray:
    if natural_reduce(value.dim) != natural_reduce(expected):
        raise DimensionError(
            f"{name}: expected {format_dimension(natural_reduce(expected))}, "
            f"got {format_dimension(natural_reduce(value.dim))}"
        )
    magnitude = np.asarray(value.magnitude, dtype=float)
    if not np.all(np.isfinite(magnitude)):
        raise DimensionError(f"{name}: magnitude must be finite")
    return magnitude


def lorentz_force_dimension_checks() -> dict[str, ConsistencyReport]:
    """Dimensional audit of the force law before and after dividing the charge by η.

    ``as_written`` is F = q (E/epsilon + u x B), whose magnetic term carries an
    extra N m^-4; ``with_eta`` is F = (q/eta)(E + u x B).
    """
    as_written = check_equation_dims(FORCE, [CHARGE / ETA * ELECTRIC_FIELD, CHARGE * VELOCITY * MAGNETIC_FIELD])
    with_eta = check_equation_dims(FORCE, [CHARGE / ETA * ELECTRIC_FIELD, CHARGE / ETA * VELOCITY * MAGNETIC_FIELD])
    return {"as_written": as_written, "with_eta": with_eta}


def lorentz_force(q: Quantity, E: Quantity, u: Quantity, B: Quantity, eta: EtaCoupling) -> Quantity:
    """F = (q/η)(E + u × B), in newtons."""
    q_m = _require("q", q, CHARGE)
    e_m = _require("E", E, ELECTRIC_FIELD)
    u_m = _require("u", u, VELOCITY)
    b_m = _require("B", B, MAGNETIC_FIELD)
    coupling = q / eta.quantity
    report = check_equation_dims(FORCE, [(coupling * E).dim, (coupling * u * B).dim])
    if not report.consistent:
        raise DimensionError(f"force terms do not reduce to N: {[t.dimension for t in report.terms]}")
    return Quantity((q_m / eta.eta) * (e_m + np.cross(u_m, b_m)), FORCE)


def lorentz_force_hbar_form(q: Quantity, E: Quantity, u: Quantity, B: Quantity, hbar: float) -> Quantity:
    """F = ħ q (E/4π + u × B/4π); identical to ``lorentz_force`` with η = 4π/ħ."""
    q_m = _require("q", q, CHARGE)
    e_m = _require("E", E, ELECTRIC_FIELD)
    u_m = _require("u", u, VELOCITY)
    b_m = _require("B", B, MAGNETIC_FIELD)
    return Quantity(hbar * q_m * (e_m / (4 * math.pi) + np.cross(u_m, b_m) / (4 * math.pi)), FORCE)


def angular_momentum(r: Quantity, q: Quantity, E: Quantity, u: Quantity, B: Quantity, eta: EtaCoupling) -> Quantity:
    """L = r × F with F from ``lorentz_force``; dimension N m."""
    r_m = _require("r", r, LENGTH)
    force = lorentz_force(q, E, u, B, eta)
    return Quantity(np.cross(r_m, force.magnitude), FORCE * LENGTH)


def radiation_energy_density(E: Quantity, B: Quantity, eta: EtaCoupling, c_light: float) -> Quantity:
    """(E² + c²B²) / (8πη) in J m^-3; vector arguments are squared as dot products."""
    e_m = _require("E", E, ELECTRIC_FIELD)
    b_m = _require("B", B, MAGNETIC_FIELD)
    total = np.sum(np.square(e_m)) + c_light**2 * np.sum(np.square(b_m))
    return Quantity(float(total) / (8 * math.pi * eta.eta), ENERGY_DENSITY)


def radiation_energy_density_hbar_form(E: Quantity, B: Quantity, hbar: float, c_light: float) -> Quantity:
    """ħ (E² + c²B²) / (32π²); equal to ``radiation_energy_density`` with η = 4π/ħ."""
    e_m = _require("E", E, ELECTRIC_FIELD)
    b_m = _require("B", B, MAGNETIC_FIELD)
    total = np.sum(np.square(e_m)) + c_light**2 * np.sum(np.square(b_m))
    return Quantity(hbar * float(total) / (32 * math.pi**2), ENERGY_DENSITY)


class FineStructureCheck(BaseModel):
    alpha: float
    reference: float = FINE_STRUCTURE_REFERENCE
    flagged: bool

    @property
    def quantity(self) -> Quantity:
        return Quantity(self.alpha, Dimension())


def fine_structure_check(e: float, hbar: float, c_light: float, rel_tol: float = 1e-3) -> FineStructureCheck:
    """α = e²/(ħc) from Gaussian magnitudes; flagged when more than ``rel_tol`` from the reference."""
    alpha = e**2 / (hbar * c_light)
    flagged = abs(alpha - FINE_STRUCTURE_REFERENCE) > rel_tol * FINE_STRUCTURE_REFERENCE
    return FineStructureCheck(alpha=alpha, flagged=flagged)
