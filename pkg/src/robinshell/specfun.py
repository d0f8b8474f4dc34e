"""Bessel functions of the first and second kind and zeros of ``J_l'``.

Values come from ``scipy.special`` (Amos / Cephes routines); the zero finder
is a fixed-step sign scan followed by Brent refinement.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy import special
from scipy.optimize import brentq

from .errors import ConvergenceError, DomainError

ZERO_SCAN_STEP = math.pi / 8
ZERO_SCAN_LIMIT = 1e4


class BesselEval(NamedTuple):
    value: float
    derivative: float


def _check_args(order, x):
    if np.any(np.asarray(order) < 0):
        raise DomainError(f"Bessel order must be >= 0, got {order}")
    if np.any(np.asarray(x) <= 0):
        raise DomainError(f"Bessel argument must be > 0, got {x}")


def bessel_j(order, x) -> BesselEval:
    """``J_order(x)`` and ``J_order'(x)``; real order >= 0, x > 0."""
    _check_args(order, x)
    return BesselEval(special.jv(order, x), special.jvp(order, x))


def bessel_y(order, x) -> BesselEval:
    """``Y_l(x)`` and ``Y_l'(x)`` for integer ``l >= 0`` and x > 0."""
    if np.any(np.asarray(order) != np.round(order)):
        raise DomainError(f"Y is provided for integer orders only, got {order}")
    _check_args(order, x)
    return BesselEval(special.yv(order, x), special.yvp(order, x))


def jprime_zero(l: int, k: int) -> float:
    """The ``k``-th strictly positive zero of ``J_l'``."""
    if int(l) != l or l < 0:
        raise DomainError(f"order must be a nonnegative integer, got {l}")
    if int(k) != k or k < 1:
        raise DomainError(f"zero index must be a positive integer, got {k}")
    return jprime_zeros(int(l), int(k))[-1]


@lru_cache(maxsize=256)
def jprime_zeros(l: int, count: int) -> tuple[float, ...]:
    """The first ``count`` positive zeros of ``J_l'`` in increasing order."""
    def f(x):
        return special.jvp(l, x)

    # J_0' = -J_1 < 0 near 0+; for l >= 1 the first zero of J_l' exceeds l
    x = 1e-3 if l == 0 else 0.5 * l
    fx = f(x)
    zeros = []
    while len(zeros) < count:
        x_next = x + ZERO_SCAN_STEP
        if x_next > ZERO_SCAN_LIMIT:
            raise ConvergenceError(f"J_{l}' zero scan exceeded x = {ZERO_SCAN_LIMIT}")
        f_next = f(x_next)
        if f_next == 0.0:
            zeros.append(x_next)
            x_next += 1e-9
            f_next = f(x_next)
        elif fx * f_next < 0:
            zeros.append(brentq(f, x, x_next, xtol=1e-14, rtol=4 * np.finfo(float).eps))
        x, fx = x_next, f_next
    return tuple(zeros[:count])
