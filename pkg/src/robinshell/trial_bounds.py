"""Trial-function quotients on perturbed shells.

The first radial eigenfunction ``v`` of the shell is extended by the constant
``v(beta)`` outside ``B_beta``; the resulting radial function ``G`` is used as
a trial function on domains ``Omega_out \\ closure(B_alpha)`` of the same
measure as the shell.  All integrands are radial, so every integral over
``Omega`` reduces to an angular integral of a radial antiderivative taken up
to the boundary radius ``rho(theta)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import brentq

from .errors import DomainError, MeasureMismatchError
from .radial_sl import ModeProblem, ShellGeometry, sl_eigenfunction

QUAD_RTOL = 1e-11
QUAD_LIMIT = 500
MEASURE_RTOL = 1e-6
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(10)


def _sphere_area(n: int) -> float:
    return 2 * math.pi ** (n / 2) / math.gamma(n / 2)


# -- domains -----------------------------------------------------------------

@dataclass(frozen=True)
class ConcentricShell:
    alpha: float
    beta: float
    dimension: int = 2

    def __post_init__(self):
        ShellGeometry(self.dimension, self.alpha, self.beta)

    @property
    def r_max(self) -> float:
        return self.beta

    def boundary_radius(self, angle):
        return np.full_like(np.asarray(angle, dtype=float), self.beta)


@dataclass(frozen=True)
class EccentricShell:
    """Ball of radius ``beta`` centred at ``(offset, 0, ...)`` minus ``B_alpha``."""

    alpha: float
    beta: float
    offset: float
    dimension: int = 2

    def __post_init__(self):
        ShellGeometry(self.dimension, self.alpha, self.beta)
        if self.dimension not in (2, 3):
            raise DomainError("eccentric shells are supported in dimensions 2 and 3")
        if not (0 <= abs(self.offset) < self.beta - self.alpha):
            raise DomainError("the hole must lie compactly inside the outer ball")

    @property
    def r_max(self) -> float:
        return self.beta + abs(self.offset)

    def boundary_radius(self, angle):
        # angle is the polar angle in 2-D and the angle to the offset axis in 3-D
        angle = np.asarray(angle, dtype=float)
        d = self.offset
        return d * np.cos(angle) + np.sqrt(self.beta ** 2 - (d * np.sin(angle)) ** 2)


@dataclass(frozen=True)
class StarShell:
    """Planar domain ``{r < rho(theta)}`` minus ``B_alpha`` with

        rho(theta) = R0 + sum_k a_k cos(k q (theta - phase)),

    where ``R0`` is chosen so that the outer domain has area ``pi beta^2``.
    The domain is invariant under rotation by ``2 pi / q``.
    """

    alpha: float
    beta: float
    coefficients: tuple[float, ...]
    order: int
    phase: float = 0.0
    dimension: int = field(default=2, init=False)

    def __post_init__(self):
        ShellGeometry(2, self.alpha, self.beta)
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))
        if int(self.order) != self.order or self.order < 1:
            raise DomainError("symmetry order must be a positive integer")
        if self.beta ** 2 - 0.5 * sum(c * c for c in self.coefficients) <= 0:
            raise DomainError("coefficients too large for the prescribed area")
        theta = np.linspace(0, 2 * math.pi, 4097)
        if np.min(self.boundary_radius(theta)) <= self.alpha:
            raise DomainError("outer boundary must stay outside B_alpha")

    @property
    def base_radius(self) -> float:
        return math.sqrt(self.beta ** 2 - 0.5 * sum(c * c for c in self.coefficients))

    @property
    def r_max(self) -> float:
        return self.base_radius + sum(abs(c) for c in self.coefficients)

    def boundary_radius(self, angle):
        angle = np.asarray(angle, dtype=float)
        rho = np.full_like(angle, self.base_radius)
        for k, c in enumerate(self.coefficients, 1):
            rho = rho + c * np.cos(k * self.order * (angle - self.phase))
        return rho


def domain_volume(domain) -> float:
    """Measure of the reference shell ``B_beta \\ B_alpha``."""
    n = domain.dimension
    return _sphere_area(n) * (domain.beta ** n - domain.alpha ** n) / n


# -- profiles ----------------------------------------------------------------

@dataclass(frozen=True)
class ExtendedProfile:
    """First eigenfunction ``v`` on ``[alpha, beta]`` continued by ``v(beta)``."""

    grid: np.ndarray
    values: np.ndarray
    derivs: np.ndarray
    plateau: float
    tau: float
    problem: ModeProblem
    r_max: float

    @property
    def beta(self) -> float:
        return self.problem.geometry.beta

    @property
    def alpha(self) -> float:
        return self.problem.geometry.alpha

    def _splines(self):
        cached = self.__dict__.get("_spl")
        if cached is None:
            r = self.grid
            q = self.problem.angular_coefficient
            n = self.problem.geometry.dimension
            second = -(n - 1) / r * self.derivs + (q / r ** 2 - self.tau) * self.values
            v = CubicHermiteSpline(r, self.values, self.derivs)
            dv = CubicHermiteSpline(r, self.derivs, second)
            cached = (v, dv)
            object.__setattr__(self, "_spl", cached)
        return cached

    def value(self, r):
        r = np.asarray(r, dtype=float)
        v, _ = self._splines()
        return np.where(r >= self.beta, self.plateau, v(np.minimum(r, self.beta)))

    def derivative(self, r):
        r = np.asarray(r, dtype=float)
        _, dv = self._splines()
        return np.where(r >= self.beta, 0.0, dv(np.minimum(r, self.beta)))

    def mesh(self) -> np.ndarray:
        """Quadrature breakpoints: the eigenfunction grid plus a plateau mesh."""
        if self.r_max <= self.beta:
            return self.grid
        tail = np.linspace(self.beta, self.r_max, 257)[1:]
        return np.concatenate([self.grid, tail])


def extend_profile(problem: ModeProblem, r_max: float) -> ExtendedProfile:
    """Extended profile ``G`` of the positive first eigenfunction of ``problem``."""
    g = problem.geometry
    if r_max < g.beta:
        raise DomainError("r_max must be at least beta")
    ef = sl_eigenfunction(problem, 1)
    return ExtendedProfile(grid=ef.grid, values=ef.values, derivs=ef.deriv_values,
                           plateau=float(ef.values[-1]), tau=ef.tau, problem=problem,
                           r_max=float(r_max))


# -- integration -------------------------------------------------------------

class RadialAntiderivative:
    """``F(R) = int_alpha^R f(r) r^(N-1) dr`` by composite 10-point Gauss-Legendre."""

    def __init__(self, f, mesh, dimension):
        self.f = f
        self.mesh = np.asarray(mesh, dtype=float)
        self.power = dimension - 1
        a, b = self.mesh[:-1], self.mesh[1:]
        self.cumulative = np.concatenate([[0.0], np.cumsum(self._panel(a, b))])

    def _panel(self, a, b):
        half = 0.5 * (b - a)
        mid = 0.5 * (b + a)
        r = mid[:, None] + half[:, None] * _GL_NODES[None, :]
        vals = np.asarray(self.f(r), dtype=float) * r ** self.power
        return half * (vals @ _GL_WEIGHTS)

    def __call__(self, R):
        R = np.atleast_1d(np.asarray(R, dtype=float))
        if np.any(R < self.mesh[0] - 1e-12) or np.any(R > self.mesh[-1] * (1 + 1e-12)):
            raise DomainError("radius outside the integration mesh")
        i = np.clip(np.searchsorted(self.mesh, R, side="right") - 1, 0, self.mesh.size - 2)
        return self.cumulative[i] + self._panel(self.mesh[i], R)


def _angular_breakpoints(domain, radius, period):
    """Angles in (0, period) where the boundary crosses ``radius``."""
    t = np.linspace(0, period, 2049)
    d = domain.boundary_radius(t) - radius
    pts = []
    for a, b, fa, fb in zip(t[:-1], t[1:], d[:-1], d[1:]):
        if fa * fb < 0:
            pts.append(brentq(lambda s: float(domain.boundary_radius(s)) - radius, a, b, xtol=1e-14))
    return pts


def _angular_integral(domain, F, weight=None, epsabs=0.0):
    """``int_Omega`` as an angular integral of ``F(rho(angle))``."""
    if isinstance(domain, EccentricShell) and domain.dimension == 3:
        def integrand(phi):
            return 2 * math.pi * math.sin(phi) * F(domain.boundary_radius(phi))[0]
        period = math.pi
    else:
        if weight is None:
            def integrand(theta):
                return F(domain.boundary_radius(theta))[0]
        else:
            def integrand(theta):
                return weight(theta) * F(domain.boundary_radius(theta))[0]
        period = 2 * math.pi
    points = _angular_breakpoints(domain, domain.beta, period)
    val, _err = quad(integrand, 0.0, period, points=points or None, epsabs=epsabs,
                     epsrel=QUAD_RTOL, limit=QUAD_LIMIT)
    return val


def radial_integral(domain, integrand, mesh=None) -> float:
    """``int_Omega f(|x|) dx`` for a vectorized radial function ``f``."""
    if mesh is None:
        mesh = np.concatenate([np.linspace(domain.alpha, domain.beta, 1025),
                               np.linspace(domain.beta, max(domain.r_max, domain.beta), 257)[1:]])
    F = RadialAntiderivative(integrand, mesh, domain.dimension)
    if isinstance(domain, ConcentricShell):
        return _sphere_area(domain.dimension) * float(F(domain.beta)[0])
    return _angular_integral(domain, F)


def weinberger_quotient(domain, profile: ExtendedProfile, l: int | None = None,
                        h: float | None = None) -> float:
    """Rayleigh quotient of the extended profile on ``domain``.

    Numerator ``int (G'^2 + l(l+N-2) G^2 / r^2) + h alpha^(N-1) |S^(N-1)| G(alpha)^2``,
    denominator ``int G^2``; bounded above by ``tau_{l,1}`` of the shell.
    """
    problem = profile.problem
    l = problem.l if l is None else l
    h = problem.h if h is None else h
    if l != problem.l or h != problem.h:
        raise DomainError("profile was generated for a different (l, h)")
    g = problem.geometry
    if domain.dimension != g.dimension or domain.alpha != g.alpha:
        raise DomainError("domain and profile disagree on dimension or inner radius")
    if domain.r_max > profile.r_max * (1 + 1e-12):
        raise DomainError("profile does not reach the outer boundary")
    reference = g.volume
    measure = radial_integral(domain, lambda r: np.ones_like(r))
    if abs(measure - reference) > MEASURE_RTOL * reference:
        raise MeasureMismatchError(f"domain measure {measure} differs from shell measure {reference}")

    q = problem.angular_coefficient
    mesh = profile.mesh()

    def energy(r):
        G = profile.value(r)
        dG = profile.derivative(r)
        return dG * dG + q * G * G / (r * r)

    num = radial_integral(domain, energy, mesh)
    den = radial_integral(domain, lambda r: profile.value(r) ** 2, mesh)
    if not problem.dirichlet:
        num += h * g.alpha ** (g.dimension - 1) * g.sphere_area * profile.value(g.alpha) ** 2
    return float(num / den)


# -- pointwise inequality ------------------------------------------------------

@dataclass(frozen=True)
class LongInequalityMargin:
    minimum: float            # over the whole grid, endpoint included
    interior_minimum: float   # over grid points strictly below beta
    endpoint: float           # value at r = beta


def check_long_inequality(problem: ModeProblem, grid_points: int = 2049) -> LongInequalityMargin:
    """Margins of ``(q/r^2 - tau) v^2(r) >= (q/beta^2 - tau) v^2(beta)``."""
    ef = sl_eigenfunction(problem, 1, grid_points)
    q = problem.angular_coefficient
    r = ef.grid
    lhs = (q / r ** 2 - ef.tau) * ef.values ** 2
    rhs = (q / r[-1] ** 2 - ef.tau) * ef.values[-1] ** 2
    margin = lhs - rhs
    return LongInequalityMargin(float(margin.min()), float(margin[:-1].min()), float(margin[-1]))


# -- symmetry identities -------------------------------------------------------

@dataclass(frozen=True)
class SymmetryReport:
    i: int
    identity: str             # "halving" or "pair_sum"
    deviation: float          # relative to int G^2
    orthogonality_max: float  # max |int G^2 sin(..) sin(..)| / int G^2
    total: float              # int G^2


def _kappa(order: int) -> int:
    kappa = int(round(math.log2(order)))
    if order < 2 or 2 ** kappa != order:
        raise DomainError("symmetry identities need a symmetry order 2^kappa >= 2")
    return kappa


def symmetry_identity_check(domain, profile: ExtendedProfile, i: int) -> SymmetryReport:
    """Angular norm identities for ``G(r) sin(i theta)`` on a symmetric domain.

    For ``i < 2^(kappa-1)``: ``int G^2 sin^2(i theta) = 1/2 int G^2``.
    For ``i = 2^(kappa-1)``: ``int G^2 sin^2 + int G^2 cos^2 = int G^2``.
    A concentric shell is symmetric of every order, so only the halving
    identity applies there.
    """
    if domain.dimension != 2:
        raise DomainError("symmetry identities are planar")
    if i < 1:
        raise IndexError("i must be positive")
    if isinstance(domain, ConcentricShell):
        top = i + 1
    else:
        top = 2 ** (_kappa(domain.order) - 1)
        if i > top:
            raise IndexError(f"i must not exceed 2^(kappa-1) = {top}")
    F = RadialAntiderivative(lambda r: profile.value(r) ** 2, profile.mesh(), 2)
    total = _angular_integral(domain, F)

    def weighted(w):
        return _angular_integral(domain, F, w, epsabs=1e-14 * total)

    if i < top:
        a_i = weighted(lambda t: math.sin(i * t) ** 2)
        deviation = abs(a_i - 0.5 * total) / total
        kind = "halving"
    else:
        a1 = weighted(lambda t: math.sin(i * t) ** 2)
        a2 = weighted(lambda t: math.cos(i * t) ** 2)
        deviation = abs(a1 + a2 - total) / total
        kind = "pair_sum"

    worst = 0.0
    for p in range(1, top + 1):
        for s in range(1, p + 1):
            for n in (0, 1):
                for m in (0, 1):
                    if p == s and (m == n or p == top):
                        continue
                    val = weighted(lambda t, p=p, s=s, n=n, m=m:
                                   math.sin(p * t + n * math.pi / 2) * math.sin(s * t + m * math.pi / 2))
                    worst = max(worst, abs(val) / total)
    return SymmetryReport(i, kind, deviation, worst, total)
