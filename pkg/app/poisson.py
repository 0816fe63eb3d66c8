"""Radial Poisson solver for spherically symmetric sources.

Solves ``(1/r²) d/dr (r² dφ/dr) = -4π k1 σ(r)`` on ``[r_min, r_max]`` with
``r_min > 0``. ``k1 = 1`` gives the point-charge potential ``q/r``;
``k1 = 1/(4π)`` gives ``Δφ = -σ``.

Two discretisations are available:

- ``conservative`` (default): finite volumes on the dual cells between node
  midpoints. Face fluxes are ``r_i r_{i+1} (φ_{i+1} - φ_i) / h_i``, which is
  exact for every harmonic ``a + b/r``; cell loads come from the source's
  enclosed charge when it is known analytically. Outside a compact source the
  discrete potential therefore matches the exact one to rounding.
- ``central``: three-point differences for ``φ'' + 2φ'/r`` with ghost-node
  flux conditions; exact for quadratics.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum
from typing import Literal

import numpy as np
from numpy.polynomial.legendre import leggauss
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.linalg import solve_banded

from .errors import DomainError, GridError, WellPosednessError
from .log import get_logger

log = get_logger(__name__)

_GL_X, _GL_W = leggauss(5)
ENCLOSED_PANELS = 256


class Spacing(StrEnum):
    UNIFORM = "uniform"
    LOGARITHMIC = "logarithmic"


class Scheme(StrEnum):
    CONSERVATIVE = "conservative"
    CENTRAL = "central"


class RadialGrid(BaseModel):
    """Node radii ``r_min = r_0 < r_1 < ... < r_{n-1} = r_max``."""

    model_config = ConfigDict(frozen=True)

    r_min: float = Field(gt=0)
    r_max: float
    n_points: int = Field(ge=16)
    spacing: Spacing = Spacing.UNIFORM

    @model_validator(mode="after")
    def _check_bounds(self) -> RadialGrid:
        if not self.r_min < self.r_max:
            raise ValueError(f"r_min ({self.r_min}) must be smaller than r_max ({self.r_max})")
        return self

    def nodes(self) -> np.ndarray:
        if self.spacing is Spacing.LOGARITHMIC:
            return np.geomspace(self.r_min, self.r_max, self.n_points)
        return np.linspace(self.r_min, self.r_max, self.n_points)


class BoundaryCondition(BaseModel):
    """``value`` fixes φ; ``flux`` fixes dφ/dr at the boundary."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["value", "flux"] = "value"
    value: float = 0.0

    @classmethod
    def dirichlet(cls, value: float = 0.0) -> BoundaryCondition:
        return cls(kind="value", value=value)

    @classmethod
    def neumann(cls, slope: float) -> BoundaryCondition:
        return cls(kind="flux", value=slope)


class FieldSnapshot(BaseModel):
    """Potential on a grid at one instant, with the solve's backward error."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: RadialGrid
    phi: np.ndarray
    t: float = 0.0
    k1: float = 1.0
    residual: float = 0.0

    @model_validator(mode="after")
    def _check_phi(self) -> FieldSnapshot:
        if self.phi.shape != (self.grid.n_points,):
            raise GridError(f"phi has shape {self.phi.shape}, grid has {self.grid.n_points} nodes")
        if not np.all(np.isfinite(self.phi)):
            raise DomainError("phi contains non-finite values")
        return self

    @property
    def r(self) -> np.ndarray:
        return self.grid.nodes()


# --- sources ------------------------------------------------------------------


class RadialSource(ABC):
    """Charge density σ(r); ``enclosed`` returns ∫₀ʳ 4πs²σ ds when known in closed form."""

    @abstractmethod
    def density(self, r: np.ndarray) -> np.ndarray: ...

    def enclosed(self, r: np.ndarray) -> np.ndarray | None:
        return None


@dataclass(frozen=True)
class UniformSphereSource(RadialSource):
    radius: float
    rho: float

    def density(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return np.where(r <= self.radius, self.rho, 0.0)

    def enclosed(self, r: np.ndarray) -> np.ndarray:
        r = np.minimum(np.asarray(r, dtype=float), self.radius)
        return 4.0 * math.pi / 3.0 * self.rho * r**3

    @property
    def total_charge(self) -> float:
        return 4.0 * math.pi / 3.0 * self.rho * self.radius**3


@dataclass(frozen=True)
class PointSource(RadialSource):
    """A charge ``q`` at the origin, inside ``r_min``."""

    q: float

    def density(self, r: np.ndarray) -> np.ndarray:
        return np.zeros_like(np.asarray(r, dtype=float))

    def enclosed(self, r: np.ndarray) -> np.ndarray:
        return np.full_like(np.asarray(r, dtype=float), self.q)


@dataclass(frozen=True)
class CallableSource(RadialSource):
    """Density from an arbitrary vectorised callable; cell loads use Gauss-Legendre."""

    fn: Callable[[np.ndarray], np.ndarray]

    def density(self, r: np.ndarray) -> np.ndarray:
        return np.asarray(self.fn(np.asarray(r, dtype=float)), dtype=float)


@dataclass(frozen=True)
class ManufacturedSource(RadialSource):
    """Source of φ = sin(kr)/r for ``k1 = 1``."""

    k: float

    def phi(self, r: np.ndarray) -> np.ndarray:
        return np.sin(self.k * r) / r

    def density(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return self.k**2 * np.sin(self.k * r) / (4.0 * math.pi * r)

    def enclosed(self, r: np.ndarray) -> np.ndarray:
        kr = self.k * np.asarray(r, dtype=float)
        return np.sin(kr) - kr * np.cos(kr)


@dataclass(frozen=True)
class ScaledSum(RadialSource):
    terms: tuple[tuple[float, RadialSource], ...]

    def density(self, r: np.ndarray) -> np.ndarray:
        return sum((a * s.density(r) for a, s in self.terms), np.zeros_like(np.asarray(r, dtype=float)))

    def enclosed(self, r: np.ndarray) -> np.ndarray | None:
        parts = [(a, s.enclosed(r)) for a, s in self.terms]
        if any(e is None for _, e in parts):
            return None
        return sum((a * e for a, e in parts), np.zeros_like(np.asarray(r, dtype=float)))


def as_source(source: RadialSource | Callable[[np.ndarray], np.ndarray]) -> RadialSource:
    return source if isinstance(source, RadialSource) else CallableSource(source)


# --- assembly -----------------------------------------------------------------


def _cell_edges(r: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mid = 0.5 * (r[:-1] + r[1:])
    return np.concatenate(([r[0]], mid)), np.concatenate((mid, [r[-1]]))


def _gauss_legendre(f: Callable[[np.ndarray], np.ndarray], a: np.ndarray, b: np.ndarray) -> np.ndarray:
    half = 0.5 * (b - a)
    points = 0.5 * (a + b)[:, None] + half[:, None] * _GL_X[None, :]
    return half * (f(points) @ _GL_W)


def _cell_loads(r: np.ndarray, source: RadialSource, k1: float) -> np.ndarray:
    """∫ r² (-4π k1 σ) dr over each dual cell."""
    lo, hi = _cell_edges(r)
    enc_lo, enc_hi = source.enclosed(lo), source.enclosed(hi)
    if enc_lo is not None and enc_hi is not None:
        return -k1 * (enc_hi - enc_lo)

    def weighted(x: np.ndarray) -> np.ndarray:
        return x**2 * source.density(x)

    integral = _gauss_legendre(weighted, lo, r) + _gauss_legendre(weighted, r, hi)
    return -4.0 * math.pi * k1 * integral


def _assemble_conservative(
    r: np.ndarray, source: RadialSource, k1: float, inner: BoundaryCondition, outer: BoundaryCondition
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    n = r.size
    h = np.diff(r)
    face = r[:-1] * r[1:] / h
    upper, diag, lower = np.zeros(n), np.zeros(n), np.zeros(n)
    upper[:-1] = face
    lower[1:] = face
    diag[:-1] -= face
    diag[1:] -= face
    rhs = _cell_loads(r, source, k1)

    if inner.kind == "value":
        upper[0], diag[0], rhs[0] = 0.0, 1.0, inner.value
    else:
        rhs[0] += r[0] ** 2 * inner.value
    if outer.kind == "value":
        lower[-1], diag[-1], rhs[-1] = 0.0, 1.0, outer.value
    else:
        rhs[-1] -= r[-1] ** 2 * outer.value
    return upper, diag, lower, rhs


def _assemble_central(
    r: np.ndarray, source: RadialSource, k1: float, inner: BoundaryCondition, outer: BoundaryCondition
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    n = r.size
    f = -4.0 * math.pi * k1 * source.density(r)
    hm = r[1:-1] - r[:-2]
    hp = r[2:] - r[1:-1]
    ri = r[1:-1]
    upper, diag, lower = np.zeros(n), np.zeros(n), np.zeros(n)
    # φ'' and 2φ'/r, both exact for quadratics on non-uniform nodes
    lower[1:-1] = 2.0 / (hm * (hm + hp)) - (2.0 / ri) * hp / (hm * (hm + hp))
    diag[1:-1] = -2.0 / (hm * hp) + (2.0 / ri) * (hp - hm) / (hm * hp)
    upper[1:-1] = 2.0 / (hp * (hm + hp)) + (2.0 / ri) * hm / (hp * (hm + hp))
    rhs = f.copy()

    h0, hn = r[1] - r[0], r[-1] - r[-2]
    if inner.kind == "value":
        diag[0], rhs[0] = 1.0, inner.value
    else:
        g = inner.value
        diag[0], upper[0] = -2.0 / h0**2, 2.0 / h0**2
        rhs[0] = f[0] + 2.0 * g / h0 - 2.0 * g / r[0]
    if outer.kind == "value":
        diag[-1], rhs[-1] = 1.0, outer.value
    else:
        g = outer.value
        diag[-1], lower[-1] = -2.0 / hn**2, 2.0 / hn**2
        rhs[-1] = f[-1] - 2.0 * g / hn - 2.0 * g / r[-1]
    return upper, diag, lower, rhs


def _tridiagonal_matvec(upper: np.ndarray, diag: np.ndarray, lower: np.ndarray, x: np.ndarray) -> np.ndarray:
    y = diag * x
    y[:-1] += upper[:-1] * x[1:]
    y[1:] += lower[1:] * x[:-1]
    return y


def _backward_error(upper, diag, lower, x, b) -> float:
    """‖Ax - b‖∞ / (‖A‖∞ ‖x‖∞ + ‖b‖∞)."""
    residual = _tridiagonal_matvec(upper, diag, lower, x) - b
    norm_a = float(np.max(np.abs(upper) + np.abs(diag) + np.abs(lower)))
    denom = norm_a * float(np.max(np.abs(x))) + float(np.max(np.abs(b)))
    return float(np.max(np.abs(residual))) / denom if denom > 0 else 0.0


def enclosed_charge(source: RadialSource, r: float, panels: int = ENCLOSED_PANELS) -> float:
    """Q_enc(r), from the closed form when the source has one, else composite Gauss-Legendre over [0, r]."""
    enclosed = source.enclosed(np.array([r]))
    if enclosed is not None:
        return float(enclosed[0])
    edges = np.linspace(0.0, r, panels + 1)
    shells = _gauss_legendre(lambda x: x**2 * source.density(x), edges[:-1], edges[1:])
    charge = 4.0 * math.pi * float(np.sum(shells))
    log.debug("enclosed charge at r=%.4g by quadrature: %.6e", r, charge)
    return charge


def default_inner_condition(grid: RadialGrid, source: RadialSource, k1: float = 1.0) -> BoundaryCondition:
    """Gauss's law at ``r_min``: dφ/dr = -k1 Q_enc(r_min) / r_min²."""
    return BoundaryCondition.neumann(-k1 * enclosed_charge(source, grid.r_min) / grid.r_min**2)


def solve_radial_poisson(
    grid: RadialGrid,
    source: RadialSource | Callable[[np.ndarray], np.ndarray],
    bc_inner: BoundaryCondition | None = None,
    bc_outer: BoundaryCondition | None = None,
    *,
    k1: float = 1.0,
    t: float = 0.0,
    scheme: Scheme | str = Scheme.CONSERVATIVE,
) -> FieldSnapshot:
    """Solve the radial problem with a direct tridiagonal factorisation.

    Args:
        grid: Radial nodes.
        source: Charge density, either a ``RadialSource`` or a vectorised callable.
        bc_inner: Condition at ``r_min``; defaults to Gauss's law for the enclosed charge.
        bc_outer: Condition at ``r_max``; defaults to φ = 0.
        k1: Gauss-law constant.
        t: Time stamp recorded on the snapshot.
        scheme: ``conservative`` or ``central``.

    Raises:
        WellPosednessError: Both conditions fix the slope.
        DomainError: The source is not finite on the nodes.
    """
    src = as_source(source)
    bc_inner = bc_inner or default_inner_condition(grid, src, k1)
    bc_outer = bc_outer or BoundaryCondition.dirichlet(0.0)
    if bc_inner.kind == "flux" and bc_outer.kind == "flux":
        raise WellPosednessError("two flux conditions leave φ defined only up to a constant; fix φ at one boundary")

    r = grid.nodes()
    if not np.all(np.isfinite(src.density(r))):
        raise DomainError("source is not finite on every grid node")

    assemble = _assemble_central if Scheme(scheme) is Scheme.CENTRAL else _assemble_conservative
    upper, diag, lower, rhs = assemble(r, src, k1, bc_inner, bc_outer)
    banded = np.zeros((3, r.size))
    banded[0, 1:] = upper[:-1]
    banded[1] = diag
    banded[2, :-1] = lower[1:]
    phi = solve_banded((1, 1), banded, rhs)
    residual = _backward_error(upper, diag, lower, phi, rhs)
    log.debug("solved %s system n=%d, backward error %.2e", Scheme(scheme).value, r.size, residual)
    return FieldSnapshot(grid=grid, phi=phi, t=t, k1=k1, residual=residual)


# --- oracles and diagnostics ---------------------------------------------------


def analytic_monopole_phi(q_D: float, r: float | np.ndarray) -> float | np.ndarray:
    """φ = q_D / r."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise DomainError("r must be positive")
    return q_D / r_arr


def analytic_monopole_field(q_D: float, r: float | np.ndarray) -> float | np.ndarray:
    """E = q_D / r²."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0):
        raise DomainError("r must be positive")
    return q_D / r_arr**2


def electric_field(snapshot: FieldSnapshot) -> np.ndarray:
    """E = -dφ/dr by second-order differences on the snapshot's nodes."""
    return -np.gradient(snapshot.phi, snapshot.r, edge_order=2)


class GaussCheck(BaseModel):
    r: float
    flux_charge: float
    enclosed: float
    relative_error: float


def gauss_flux_check(snapshot: FieldSnapshot, source: RadialSource, r: float) -> GaussCheck:
    """Charge implied by the discrete flux through the face containing ``r``, against Q_enc(r)."""
    nodes = snapshot.r
    if not nodes[0] <= r < nodes[-1]:
        raise DomainError(f"r={r} lies outside the grid [{nodes[0]}, {nodes[-1]})")
    enclosed = source.enclosed(np.array([r]))
    if enclosed is None:
        raise DomainError("Gauss check needs a source with a closed-form enclosed charge")
    i = int(np.searchsorted(nodes, r, side="right")) - 1
    h = nodes[i + 1] - nodes[i]
    flux = nodes[i] * nodes[i + 1] * (snapshot.phi[i + 1] - snapshot.phi[i]) / h
    charge = -flux / snapshot.k1
    expected = float(enclosed[0])
    scale = abs(expected) if expected != 0 else 1.0
    return GaussCheck(r=r, flux_charge=charge, enclosed=expected, relative_error=abs(charge - expected) / scale)


class ConvergenceRow(BaseModel):
    n_points: int
    h: float
    l2_error: float
    order: float | None = None


class ConvergenceStudy(BaseModel):
    scheme: Scheme
    rows: list[ConvergenceRow]

    @property
    def min_order(self) -> float:
        return min(row.order for row in self.rows if row.order is not None)


def convergence_study(
    sizes: list[int], r_max: float = 1.0, scheme: Scheme | str = Scheme.CONSERVATIVE
) -> ConvergenceStudy:
    """Relative L2 error against φ = sin(kr)/r, k = π/r_max, on uniform grids over [r_max/10, r_max]."""
    if len(sizes) < 3:
        raise DomainError(f"a convergence study needs at least 3 grid sizes, got {len(sizes)}")
    if any(b <= a for a, b in zip(sizes, sizes[1:], strict=False)):
        raise DomainError(f"grid sizes must be strictly increasing, got {sizes}")

    source = ManufacturedSource(k=math.pi / r_max)
    r_min = r_max / 10.0
    rows: list[ConvergenceRow] = []
    for n in sizes:
        grid = RadialGrid(r_min=r_min, r_max=r_max, n_points=n)
        exact = source.phi(grid.nodes())
        snapshot = solve_radial_poisson(
            grid,
            source,
            BoundaryCondition.dirichlet(float(exact[0])),
            BoundaryCondition.dirichlet(float(exact[-1])),
            scheme=scheme,
        )
        error = float(np.linalg.norm(snapshot.phi - exact) / np.linalg.norm(exact))
        h = (r_max - r_min) / (n - 1)
        order = None
        if rows:
            prev = rows[-1]
            order = math.log(prev.l2_error / error) / math.log(prev.h / h)
        rows.append(ConvergenceRow(n_points=n, h=h, l2_error=error, order=order))
    return ConvergenceStudy(scheme=Scheme(scheme), rows=rows)
