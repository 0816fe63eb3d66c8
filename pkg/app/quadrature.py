"""Adaptive Simpson integration with absolute/relative tolerance control."""

from __future__ import annotations

import math
from collections.abc import Callable
from typing import NamedTuple

from .errors import DomainError, QuadratureError

DEFAULT_ABS_TOL = 1e-10
DEFAULT_REL_TOL = 1e-8


class QuadratureResult(NamedTuple):
    value: float
    error: float


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return h / 3.0 * (fa + 4.0 * fm + fb)


def integrate_adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    abs_tol: float = DEFAULT_ABS_TOL,
    rel_tol: float = DEFAULT_REL_TOL,
    max_depth: int = 50,
    panels: int = 8,
) -> QuadratureResult:
    """Integrate ``f`` over [a, b] by recursive Simpson bisection.

    The interval is first cut into ``panels`` equal pieces so that integrands
    vanishing at the three initial nodes (e.g. sin² over a period) are not
    accepted prematurely. The target error is
    ``max(abs_tol, rel_tol * |coarse estimate|)``, shared equally between panels
    and halved at each bisection.

    Args:
        f: Integrand.
        a: Lower bound.
        b: Upper bound.
        abs_tol: Absolute error target.
        rel_tol: Error target relative to the coarse composite estimate.
        max_depth: Bisection limit per panel.
        panels: Number of initial panels.

    Returns:
        The integral and the accumulated error estimate.

    Raises:
        QuadratureError: A panel reached ``max_depth`` without meeting its
            tolerance, or the integrand returned a non-finite value.
    """
    if panels < 1:
        raise DomainError(f"panels must be >= 1, got {panels}")
    if a == b:
        return QuadratureResult(0.0, 0.0)
    if a > b:
        value, error = integrate_adaptive_simpson(f, b, a, abs_tol, rel_tol, max_depth, panels)
        return QuadratureResult(-value, error)

    def evaluate(x: float) -> float:
        y = float(f(x))
        if not math.isfinite(y):
            raise QuadratureError(f"integrand is not finite at x={x!r}", math.inf)
        return y

    def adaptive(lo: float, hi: float, flo: float, fmid: float, fhi: float, whole: float, depth: int, tol: float):
        mid = (lo + hi) / 2.0
        h = (hi - lo) / 2.0
        fl = evaluate((lo + mid) / 2.0)
        fr = evaluate((mid + hi) / 2.0)
        left = _simpson(flo, fl, fmid, h / 2.0)
        right = _simpson(fmid, fr, fhi, h / 2.0)
        estimate = (left + right - whole) / 15.0
        if abs(estimate) <= tol:
            return left + right + estimate, abs(estimate)
        if depth >= max_depth:
            raise QuadratureError(f"no convergence on [{lo!r}, {hi!r}] after {max_depth} bisections", abs(estimate))
        lv, le = adaptive(lo, mid, flo, fl, fmid, left, depth + 1, tol / 2.0)
        rv, re = adaptive(mid, hi, fmid, fr, fhi, right, depth + 1, tol / 2.0)
        return lv + rv, le + re

    edges = [a + (b - a) * i / panels for i in range(panels)] + [b]
    nodes = []
    for lo, hi in zip(edges[:-1], edges[1:], strict=True):
        flo, fmid, fhi = evaluate(lo), evaluate((lo + hi) / 2.0), evaluate(hi)
        nodes.append((lo, hi, flo, fmid, fhi, _simpson(flo, fmid, fhi, (hi - lo) / 2.0)))

    coarse = sum(node[-1] for node in nodes)
    tol = max(abs_tol, rel_tol * abs(coarse)) / panels
    value = 0.0
    error = 0.0
    for lo, hi, flo, fmid, fhi, whole in nodes:
        v, e = adaptive(lo, hi, flo, fmid, fhi, whole, 0, tol)
        value += v
        error += e
    return QuadratureResult(value, error)


def phase_average(g: Callable[[float], float], **kwargs: float) -> float:
    """Mean of ``g(theta)`` over one full phase, theta in [0, 2π]."""
    return integrate_adaptive_simpson(g, 0.0, 2 * math.pi, **kwargs).value / (2 * math.pi)
