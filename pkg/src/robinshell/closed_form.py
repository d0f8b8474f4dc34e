"""Closed-form spectra of the model domains.

The planar annulus eigenvalues are zeros of a Bessel cross-product; the disk,
rectangle and segment spectra are explicit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special
from scipy.optimize import brentq

from .errors import DomainError, NotFoundError
from .radial_sl import ShellGeometry, check_robin, is_dirichlet
from .specfun import jprime_zeros

# below this the cross-product is ill-conditioned; such eigenvalues are left
# to the shooting solver
TAU_EPS = 1e-8
TAU_SEARCH_CEILING = 1e8


@dataclass(frozen=True)
class ModelSpectrumEntry:
    value: float
    mode: tuple
    multiplicity: int = 1


def expand(entries) -> list[float]:
    """Eigenvalues counted with multiplicity."""
    return [e.value for e in entries for _ in range(e.multiplicity)]


def _check_planar(geometry: ShellGeometry):
    if geometry.dimension != 2:
        raise DomainError("the Bessel cross-product applies to N = 2 only")


def _crossproduct_s(l: int, s, alpha: float, beta: float, h: float):
    """Cross-product as a function of ``s = sqrt(tau)`` (vectorized)."""
    ja, dja = special.jv(l, s * alpha), special.jvp(l, s * alpha)
    ya, dya = special.yv(l, s * alpha), special.yvp(l, s * alpha)
    djb, dyb = special.jvp(l, s * beta), special.yvp(l, s * beta)
    if is_dirichlet(h):
        return s * dyb * ja - s * djb * ya
    return s * dyb * (s * dja - h * ja) - s * djb * (s * dya - h * ya)


def crossproduct(l: int, tau: float, geometry: ShellGeometry, h: float) -> float:
    """Bessel cross-product ``B_l(tau)`` whose zeros are annulus eigenvalues."""
    _check_planar(geometry)
    h = check_robin(h)
    if tau <= TAU_EPS:
        raise DomainError(f"cross-product requires tau > {TAU_EPS}, got {tau}")
    return float(_crossproduct_s(l, math.sqrt(tau), geometry.alpha, geometry.beta, h))


def crossproduct_root(l: int, k: int, geometry: ShellGeometry, h: float) -> float:
    """The ``k``-th zero of ``B_l`` in ``(TAU_EPS, inf)``."""
    if int(k) != k or k < 1:
        raise DomainError(f"root index must be a positive integer, got {k}")
    return crossproduct_roots(l, int(k), geometry, h)[-1]


def crossproduct_roots(l: int, count: int, geometry: ShellGeometry, h: float) -> tuple[float, ...]:
    """The first ``count`` zeros of ``B_l`` above ``TAU_EPS``, increasing."""
    _check_planar(geometry)
    return _roots(int(l), int(count), geometry.alpha, geometry.beta, check_robin(h))


@lru_cache(maxsize=4096)
def _roots(l, count, alpha, beta, h):
    # consecutive zeros in sqrt(tau) are about pi/(beta-alpha) apart
    ds = math.pi / (16 * (beta - alpha))
    s_max = math.sqrt(TAU_SEARCH_CEILING)
    s_lo = math.sqrt(TAU_EPS) * (1 + 1e-12)
    roots = []

    def f(s):
        return float(_crossproduct_s(l, s, alpha, beta, h))

    while len(roots) < count:
        s = s_lo + ds * np.arange(257)
        vals = _crossproduct_s(l, s, alpha, beta, h)
        sign = np.sign(vals)
        for i in range(256):
            if sign[i] == 0:
                if i > 0 and sign[i - 1] != 0:
                    roots.append(s[i] ** 2)
                continue
            if sign[i] * sign[i + 1] < 0:
                root = brentq(f, s[i], s[i + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps)
                roots.append(root * root)
            if len(roots) >= count:
                break
        s_lo = s[-1]
        if s_lo > s_max:
            raise NotFoundError(f"cross-product root {count} of l={l} lies above tau={TAU_SEARCH_CEILING}")
    return tuple(roots[:count])


def disk_neumann_spectrum(radius: float, count: int) -> list[ModelSpectrumEntry]:
    """Lowest Neumann eigenvalues of the disk of given radius.

    Entries carry ``mode = (l, k)`` (``(0, 0)`` for the constant) and
    multiplicity 2 for ``l >= 1``; enough entries are returned to cover
    ``count`` eigenvalues counted with multiplicity.
    """
    if radius <= 0:
        raise DomainError("radius must be positive")
    if count < 1:
        raise DomainError("count must be positive")
    entries = [ModelSpectrumEntry(0.0, (0, 0), 1)]
    entries += [ModelSpectrumEntry((z / radius) ** 2, (0, k + 1), 1)
                for k, z in enumerate(jprime_zeros(0, count))]
    cutoff = sorted(expand(entries))[count - 1]
    l = 1
    # j'_{l,1} > l bounds the angular scan
    while (l / radius) ** 2 <= cutoff:
        k = 1
        while True:
            value = (jprime_zeros(l, k)[-1] / radius) ** 2
            if value > cutoff:
                break
            entries.append(ModelSpectrumEntry(value, (l, k), 2))
            cutoff = sorted(expand(entries))[count - 1]
            k += 1
        l += 1
    entries.sort(key=lambda e: (e.value, e.mode))
    out, total = [], 0
    for e in entries:
        if total >= count:
            break
        out.append(e)
        total += e.multiplicity
    return out


def rectangle_neumann_spectrum(a: float, count: int) -> list[ModelSpectrumEntry]:
    """Neumann eigenvalues of the unit-area rectangle ``(-a/2, a/2) x (-1/(2a), 1/(2a))``."""
    if a <= 0:
        raise DomainError("side length must be positive")
    if count < 1:
        raise DomainError("count must be positive")
    entries = [ModelSpectrumEntry(math.pi ** 2 * (k * k / a ** 2 + m * m * a ** 2), (k, m), 1)
               for k in range(count) for m in range(count)]
    entries.sort(key=lambda e: (e.value, e.mode))
    return entries[:count]


def segment_dirichlet_spectrum(half_length: float, count: int) -> list[ModelSpectrumEntry]:
    """Dirichlet eigenvalues ``(m pi / (2 half_length))^2`` of a segment."""
    if half_length <= 0:
        raise DomainError("half length must be positive")
    if count < 1:
        raise DomainError("count must be positive")
    return [ModelSpectrumEntry((m * math.pi / (2 * half_length)) ** 2, (m,), 1)
            for m in range(1, count + 1)]
