"""Critical Robin parameters and inner radii.

* ``h1``: where ``tau_{l,1}`` changes sign;
* ``h0``: where the first eigenfunction stops being monotone decreasing,
  located through ``tau_{l,1}(h0) = l(l+N-2)/beta^2`` and checked against
  the sign pattern of ``v'``;
* crossings of ``tau_{0,2}`` and ``tau_{l,1}`` in ``h``;
* the inner radius above which the Neumann ``tau_{l,1}`` lies below the
  Dirichlet ``tau_{0,1}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import CrossValidationError, DomainError, NotFoundError
from .radial_sl import (DECREASING, DIP, DIRICHLET, ModeProblem, ShellGeometry,
                        classify_profile, sl_eigenvalue)

ROOT_XTOL = 1e-12
MAX_EXPANSIONS = 40


@dataclass(frozen=True)
class ThresholdReport:
    value: float | None
    bracket: tuple[float, float]
    residual: float
    iterations: int
    method: str


def _refine(fn, a, b, method):
    root, info = brentq(fn, a, b, xtol=ROOT_XTOL, rtol=4 * np.finfo(float).eps,
                        maxiter=200, full_output=True)
    return ThresholdReport(root, (a, b), abs(fn(root)), info.iterations, method)


def default_h_floor(geometry: ShellGeometry) -> float:
    return -10.0 * max(1.0, 1.0 / geometry.alpha)


def _negative_bracket(fn, geometry):
    """Find h_lo < 0 with fn(h_lo) < 0 <= fn(0), expanding the floor as needed."""
    if fn(0.0) <= 0:
        raise NotFoundError("defining function is not positive at h = 0")
    lo = default_h_floor(geometry)
    for _ in range(MAX_EXPANSIONS):
        if fn(lo) < 0:
            return lo
        lo *= 2.0
    raise NotFoundError(f"no sign change down to h = {lo}")


def find_h1(geometry: ShellGeometry, l: int) -> ThresholdReport:
    """Robin parameter at which ``tau_{l,1}`` vanishes."""
    if l < 1:
        raise DomainError("h1 is defined for l >= 1")

    def fn(h):
        return sl_eigenvalue(ModeProblem(geometry, l, h), 1)

    lo = _negative_bracket(fn, geometry)
    return _refine(fn, lo, 0.0, "brent on tau_{l,1}(h)")


def find_h0(geometry: ShellGeometry, l: int, rel_eps: float = 1e-3) -> ThresholdReport:
    """Robin parameter separating decreasing and dip-shaped first eigenfunctions."""
    if l < 1:
        raise DomainError("h0 is defined for l >= 1")
    level = l * (l + geometry.dimension - 2) / geometry.beta ** 2

    def fn(h):
        return sl_eigenvalue(ModeProblem(geometry, l, h), 1) - level

    lo = _negative_bracket(fn, geometry)
    report = _refine(fn, lo, 0.0, "brent on tau_{l,1}(h) - l(l+N-2)/beta^2")
    h0 = report.value
    eps = rel_eps * abs(h0)
    above = classify_profile(ModeProblem(geometry, l, h0 + eps))
    below = classify_profile(ModeProblem(geometry, l, h0 - eps))
    if above.kind != DIP or below.kind != DECREASING:
        raise CrossValidationError(
            f"profile classes around h0={h0}: above {above.kind}, below {below.kind}")
    return report


def find_h_crossing(geometry: ShellGeometry, l: int, h_range=(-1.01, 0.5),
                    points: int = 200) -> list[ThresholdReport]:
    """All sign changes of ``tau_{0,2}(h) - tau_{l,1}(h)`` detected on a grid."""
    if l < 1:
        raise DomainError("crossings are defined for l >= 1")

    def fn(h):
        return (sl_eigenvalue(ModeProblem(geometry, 0, h), 2)
                - sl_eigenvalue(ModeProblem(geometry, l, h), 1))

    hs = np.linspace(h_range[0], h_range[1], points)
    vals = [fn(h) for h in hs]
    reports = []
    for a, b, fa, fb in zip(hs[:-1], hs[1:], vals[:-1], vals[1:]):
        if fa == 0.0:
            reports.append(ThresholdReport(float(a), (float(a), float(a)), 0.0, 0, "grid node"))
        elif fa * fb < 0:
            reports.append(_refine(fn, float(a), float(b), "grid scan + brent on tau_{0,2} - tau_{l,1}"))
    return reports


def alpha_star_gap(dimension: int, beta: float, l: int, alpha: float) -> float:
    """``tau_{0,1}(h=inf, alpha) - tau_{l,1}(h=0, alpha)``."""
    g = ShellGeometry(dimension, alpha, beta)
    return (sl_eigenvalue(ModeProblem(g, 0, DIRICHLET), 1)
            - sl_eigenvalue(ModeProblem(g, l, 0.0), 1))


def find_alpha_star(dimension: int, beta: float, l: int, points: int = 100) -> ThresholdReport:
    """Largest sign change of :func:`alpha_star_gap` on a grid of ``(0, beta)``.

    Above the returned radius the Neumann ``tau_{l,1}`` lies below the
    Dirichlet-Neumann ``tau_{0,1}``, which suffices for the ordering chain
    ``tau_{0,1} < ... < tau_{l,1} < tau_{0,2}`` at every ``h``.
    """
    if l < 1:
        raise DomainError("l must be positive")
    alphas = beta * np.arange(1, points) / points

    def fn(a):
        return alpha_star_gap(dimension, beta, l, a)

    vals = [fn(a) for a in alphas]
    for i in range(len(alphas) - 2, -1, -1):
        if vals[i] * vals[i + 1] < 0:
            return _refine(fn, float(alphas[i]), float(alphas[i + 1]), "grid scan + brent on alpha")
    return ThresholdReport(None, (float(alphas[0]), float(alphas[-1])), math.nan, 0, "no sign change")
