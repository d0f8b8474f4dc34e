"""Radial Sturm-Liouville problem on a spherical shell.

The eigenvalue problem is

    -(r^(N-1) v')' + l(l+N-2) r^(N-3) v = tau r^(N-1) v   on (alpha, beta),
    -v'(alpha) + h v(alpha) = 0,   v'(beta) = 0,

with ``h = math.inf`` standing for the Dirichlet condition ``v(alpha) = 0``.
Eigenvalues are located by shooting on the Prufer angle, which gives an
exact index count for any real ``tau``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import brentq

from . import _ode
from .errors import (AmbiguousClassificationError, ConvergenceError, DegenerateError,
                     DomainError, InvalidParameterError, NotFoundError)

DIRICHLET = math.inf

RTOL = 1e-12
ATOL = 1e-12
GRID_POINTS = 2049
MAX_STEPS = 2_000_000
TAU_SEARCH_LIMIT = 1e12


def is_dirichlet(h: float) -> bool:
    return h == math.inf


def check_robin(h: float) -> float:
    h = float(h)
    if math.isnan(h) or h == -math.inf:
        raise DomainError(f"Robin parameter must be real or +inf, got {h}")
    return h


@dataclass(frozen=True)
class ShellGeometry:
    """The shell ``B_beta \\ closure(B_alpha)`` in ``R^dimension``."""

    dimension: int
    alpha: float
    beta: float

    def __post_init__(self):
        if int(self.dimension) != self.dimension or self.dimension < 2:
            raise DomainError(f"dimension must be an integer >= 2, got {self.dimension}")
        if not (0 < self.alpha < self.beta) or not math.isfinite(self.beta):
            raise DomainError(f"need 0 < alpha < beta < inf, got alpha={self.alpha}, beta={self.beta}")

    @property
    def sphere_area(self) -> float:
        """Surface measure of the unit sphere ``S^(N-1)``."""
        n = self.dimension
        return 2 * math.pi ** (n / 2) / math.gamma(n / 2)

    @property
    def volume(self) -> float:
        n = self.dimension
        return self.sphere_area * (self.beta ** n - self.alpha ** n) / n


@dataclass(frozen=True)
class ModeProblem:
    """One separated radial problem: geometry, angular index ``l`` and Robin ``h``."""

    geometry: ShellGeometry
    l: int
    h: float

    def __post_init__(self):
        if int(self.l) != self.l or self.l < 0:
            raise DomainError(f"angular index must be a nonnegative integer, got {self.l}")
        object.__setattr__(self, "h", check_robin(self.h))

    @property
    def angular_coefficient(self) -> float:
        """``l(l+N-2)``, the eigenvalue of ``-Laplace-Beltrami`` on the sphere."""
        return float(self.l * (self.l + self.geometry.dimension - 2))

    @property
    def dirichlet(self) -> bool:
        return is_dirichlet(self.h)

    def with_h(self, h: float) -> "ModeProblem":
        return ModeProblem(self.geometry, self.l, h)

    def with_l(self, l: int) -> "ModeProblem":
        return ModeProblem(self.geometry, l, self.h)


@dataclass(frozen=True)
class RadialEigenpair:
    tau: float
    j: int
    grid: np.ndarray
    values: np.ndarray
    deriv_values: np.ndarray
    zero_count: int
    problem: ModeProblem

    def second_derivative(self) -> np.ndarray:
        """``v''`` on the grid, read off from the differential equation."""
        g = self.problem.geometry
        r = self.grid
        return (-(g.dimension - 1) / r * self.deriv_values
                + (self.problem.angular_coefficient / r ** 2 - self.tau) * self.values)

    def derivative_spline(self) -> CubicHermiteSpline:
        return CubicHermiteSpline(self.grid, self.deriv_values, self.second_derivative())


@dataclass(frozen=True)
class ProfileClass:
    """Shape of a first eigenfunction: ``increasing``, ``decreasing`` or ``dip``.

    For ``dip`` the derivative is negative on ``(alpha, gamma)`` and positive
    on ``(gamma, beta)``.
    """

    kind: str
    gamma: float | None = None


INCREASING = "increasing"
DECREASING = "decreasing"
DIP = "dip"


def _initial_angle(problem: ModeProblem) -> float:
    if problem.dirichlet:
        return 0.0
    # arccot(alpha^(N-1) h) in (0, pi)
    return math.pi / 2 - math.atan(problem.geometry.alpha ** (problem.geometry.dimension - 1) * problem.h)


def prufer_end_angle(problem: ModeProblem, tau: float) -> float:
    """Prufer angle at ``beta`` for spectral parameter ``tau``."""
    g = problem.geometry
    theta = _ode.prufer_angle(_initial_angle(problem), g.alpha, g.beta, float(tau),
                              problem.angular_coefficient, float(g.dimension - 1),
                              RTOL, ATOL, MAX_STEPS)
    if not math.isfinite(theta):
        raise ConvergenceError(f"Prufer integration failed at tau={tau} for {problem}")
    return theta


def count_eigenvalues_below(problem: ModeProblem, tau: float) -> int:
    """Number of eigenvalues ``tau_{l,j}`` strictly below ``tau``."""
    theta = prufer_end_angle(problem, tau)
    return int(math.floor((theta + math.pi / 2) / math.pi))


def _rayleigh_of_constant(problem: ModeProblem) -> float:
    g = problem.geometry
    n = g.dimension
    if problem.dirichlet:
        return 0.0
    return n * problem.h * g.alpha ** (n - 1) / (g.beta ** n - g.alpha ** n)


def sl_eigenvalue(problem: ModeProblem, j: int) -> float:
    """The ``j``-th eigenvalue ``tau_{l,j}`` (``j >= 1``)."""
    if int(j) != j or j < 1:
        raise DomainError(f"eigenvalue index must be a positive integer, got {j}")
    return _eigenvalue(problem, int(j))


@lru_cache(maxsize=8192)
def _eigenvalue(problem: ModeProblem, j: int) -> float:
    step = max(1.0, abs(_rayleigh_of_constant(problem)))
    if count_eigenvalues_below(problem, 0.0) <= j - 1:
        lo, hi = 0.0, step
        while count_eigenvalues_below(problem, hi) <= j - 1:
            lo, hi = hi, 2.0 * hi
            if hi > TAU_SEARCH_LIMIT:
                raise NotFoundError(f"no bracket for tau_{{l,{j}}} below {TAU_SEARCH_LIMIT}")
    else:
        lo, hi = -step, 0.0
        while count_eigenvalues_below(problem, lo) >= j:
            lo, hi = 2.0 * lo, lo
            if lo < -TAU_SEARCH_LIMIT:
                raise NotFoundError(f"no bracket for tau_{{l,{j}}} above {-TAU_SEARCH_LIMIT}")
    target = math.pi / 2 + (j - 1) * math.pi
    # the end angle is continuous and increasing in tau
    return brentq(lambda t: prufer_end_angle(problem, t) - target, lo, hi,
                  xtol=1e-14, rtol=1e-14, maxiter=300)


def sl_eigenfunction(problem: ModeProblem, j: int, grid_points: int = GRID_POINTS) -> RadialEigenpair:
    """Eigenpair with ``int r^(N-1) v^2 = 1`` and ``v(beta) > 0``."""
    tau = sl_eigenvalue(problem, j)
    return _eigenfunction(problem, int(j), tau, grid_points)


@lru_cache(maxsize=512)
def _eigenfunction(problem: ModeProblem, j: int, tau: float, grid_points: int) -> RadialEigenpair:
    g = problem.geometry
    n = g.dimension
    r = np.linspace(g.alpha, g.beta, grid_points)
    q = problem.angular_coefficient
    p = r ** (n - 1)
    if problem.dirichlet:
        left0 = np.array([0.0, 1.0])
    else:
        left0 = np.array([1.0, g.alpha ** (n - 1) * problem.h])
    left = _ode.linear_on_grid(left0, r, True, tau, q, float(n - 1), RTOL, 1e-13, MAX_STEPS)
    right = _ode.linear_on_grid(np.array([1.0, 0.0]), r, False, tau, q, float(n - 1), RTOL, 1e-13, MAX_STEPS)
    if not (np.all(np.isfinite(left)) and np.all(np.isfinite(right))):
        raise ConvergenceError(f"eigenfunction integration failed for {problem}, j={j}")

    # Each one-sided solution is trustworthy where it has not decayed from its
    # running maximum in the integration direction; splice where both are.
    amp_l = np.hypot(left[:, 0], left[:, 1])
    amp_r = np.hypot(right[:, 0], right[:, 1])
    qual_l = amp_l / np.maximum.accumulate(amp_l)
    qual_r = amp_r / np.maximum.accumulate(amp_r[::-1])[::-1]
    m = int(np.argmax(np.minimum(qual_l, qual_r)))
    scale = float(left[m] @ right[m]) / float(right[m] @ right[m])
    sol = np.empty_like(left)
    sol[:m + 1] = left[:m + 1]
    sol[m + 1:] = scale * right[m + 1:]
    if m == grid_points - 1:
        sol[m] = scale * right[m]

    v = sol[:, 0]
    dv = sol[:, 1] / p
    norm = math.sqrt(simpson(p * v * v, x=r))
    if v[-1] < 0:
        norm = -norm
    v = v / norm
    dv = dv / norm
    return RadialEigenpair(tau=tau, j=j, grid=r, values=v, deriv_values=dv,
                           zero_count=_sign_changes(v), problem=problem)


def _sign_changes(v: np.ndarray) -> int:
    scale = np.max(np.abs(v))
    s = np.sign(np.where(np.abs(v) > 1e-12 * scale, v, 0.0))
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def rayleigh_quotient(problem: ModeProblem, grid, values, derivs=None) -> float:
    """Rayleigh quotient ``R_l`` of a sampled function by composite Simpson.

    Without ``derivs`` the derivative is estimated by second-order differences.
    """
    r = np.asarray(grid, dtype=float)
    v = np.asarray(values, dtype=float)
    dv = np.gradient(v, r, edge_order=2) if derivs is None else np.asarray(derivs, dtype=float)
    g = problem.geometry
    w = r ** (g.dimension - 1)
    den = simpson(w * v * v, x=r)
    if den < 1e-14:
        raise DegenerateError("function has (numerically) zero weighted norm")
    num = simpson(w * (dv * dv + problem.angular_coefficient * v * v / r ** 2), x=r)
    if problem.dirichlet:
        if abs(v[0]) > 1e-8 * np.max(np.abs(v)):
            raise DomainError("Dirichlet Rayleigh quotient needs v(alpha) = 0")
    else:
        num += problem.h * g.alpha ** (g.dimension - 1) * v[0] ** 2
    return float(num / den)


def tau_h_derivative(problem: ModeProblem, j: int) -> float:
    """``d tau_{l,j} / dh = alpha^(N-1) v(alpha)^2`` for normalized ``v``."""
    if problem.dirichlet:
        raise InvalidParameterError("the h-derivative is defined for finite h only")
    ef = sl_eigenfunction(problem, j)
    return problem.geometry.alpha ** (problem.geometry.dimension - 1) * float(ef.values[0]) ** 2


def classify_profile(problem: ModeProblem, zero_tol: float = 1e-7) -> ProfileClass:
    """Monotonicity class of the first eigenfunction for ``l >= 1``."""
    if problem.l < 1:
        raise DomainError("profile classification is defined for l >= 1")
    ef = sl_eigenfunction(problem, 1)
    dv = ef.deriv_values[1:-1]
    tol = zero_tol * np.max(np.abs(ef.deriv_values))
    s = np.where(np.abs(dv) < tol, 0, np.sign(dv)).astype(int)
    nonzero = s[s != 0]
    if nonzero.size == 0:
        raise AmbiguousClassificationError("derivative vanishes on the whole grid")
    changes = np.flatnonzero(nonzero[1:] != nonzero[:-1])
    if changes.size == 0:
        _check_zero_runs(s, allow_edges=True)
        return ProfileClass(INCREASING if nonzero[0] > 0 else DECREASING)
    if changes.size > 1 or nonzero[0] > 0:
        raise AmbiguousClassificationError("derivative sign pattern is not of dip type")
    _check_zero_runs(s, allow_edges=True)
    idx = np.flatnonzero(s)
    k = idx[changes[0]] + 1   # last negative grid index (interior offset by 1)
    k_next = idx[changes[0] + 1] + 1
    spline = ef.derivative_spline()
    gamma = brentq(spline, ef.grid[k], ef.grid[k_next], xtol=1e-14, rtol=1e-14)
    return ProfileClass(DIP, float(gamma))


def _check_zero_runs(s: np.ndarray, allow_edges: bool) -> None:
    zero = s == 0
    if not zero.any():
        return
    # a run of near-zero derivative values is tolerated only next to a sign
    # change or at the ends of the interval
    padded = np.concatenate(([False], zero, [False]))
    starts = np.flatnonzero(padded[1:] & ~padded[:-1])
    ends = np.flatnonzero(~padded[1:] & padded[:-1])
    for a, b in zip(starts, ends):
        at_edge = a == 0 or b == s.size
        if at_edge and allow_edges:
            continue
        if b - a > 2 and not (a > 0 and b < s.size and s[a - 1] != s[b]):
            raise AmbiguousClassificationError("derivative is numerically zero on an interior region")
