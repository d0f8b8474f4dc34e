"""Compiled Dormand-Prince 5(4) integrator for the radial equation.

Two right-hand sides are supported, selected by ``mode``:

* ``PRUFER`` integrates the Prufer angle ``theta`` of
  ``v = rho sin(theta)``, ``r^(N-1) v' = rho cos(theta)``;
* ``LINEAR`` integrates ``(v, r^(N-1) v')`` directly.
"""
import numpy as np
from numba import njit

PRUFER = 0
LINEAR = 1

# Dormand-Prince 5(4) tableau
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                                 49.0 / 176.0, -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
_E1, _E3, _E4, _E5, _E6, _E7 = (71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0,
                                 -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)


@njit(cache=True)
def _rhs(mode, r, y, tau, q, nm1, out):
    p = r ** nm1
    if mode == PRUFER:
        s = np.sin(y[0])
        c = np.cos(y[0])
        out[0] = c * c / p + (tau * p - q * p / (r * r)) * s * s
    else:
        out[0] = y[1] / p
        out[1] = (q / (r * r) - tau) * p * y[0]


@njit(cache=True)
def _advance(mode, y, r0, r1, tau, q, nm1, rtol, atol, h0, max_steps):
    """Integrate ``y`` in place from r0 to r1. Returns (last step, steps) or
    steps = -1 on failure."""
    n = y.shape[0]
    k1 = np.empty(n)
    k2 = np.empty(n)
    k3 = np.empty(n)
    k4 = np.empty(n)
    k5 = np.empty(n)
    k6 = np.empty(n)
    k7 = np.empty(n)
    yt = np.empty(n)
    y5 = np.empty(n)
    span = r1 - r0
    if span == 0.0:
        return h0, 0
    direction = 1.0 if span > 0 else -1.0
    h = min(abs(h0), abs(span)) * direction
    r = r0
    _rhs(mode, r, y, tau, q, nm1, k1)
    steps = 0
    while direction * (r1 - r) > 0.0:
        if steps >= max_steps:
            return h, -1
        if direction * (r + h - r1) > 0.0:
            h = r1 - r
        for i in range(n):
            yt[i] = y[i] + h * _A21 * k1[i]
        _rhs(mode, r + _C2 * h, yt, tau, q, nm1, k2)
        for i in range(n):
            yt[i] = y[i] + h * (_A31 * k1[i] + _A32 * k2[i])
        _rhs(mode, r + _C3 * h, yt, tau, q, nm1, k3)
        for i in range(n):
            yt[i] = y[i] + h * (_A41 * k1[i] + _A42 * k2[i] + _A43 * k3[i])
        _rhs(mode, r + _C4 * h, yt, tau, q, nm1, k4)
        for i in range(n):
            yt[i] = y[i] + h * (_A51 * k1[i] + _A52 * k2[i] + _A53 * k3[i] + _A54 * k4[i])
        _rhs(mode, r + _C5 * h, yt, tau, q, nm1, k5)
        for i in range(n):
            yt[i] = y[i] + h * (_A61 * k1[i] + _A62 * k2[i] + _A63 * k3[i]
                                + _A64 * k4[i] + _A65 * k5[i])
        _rhs(mode, r + h, yt, tau, q, nm1, k6)
        for i in range(n):
            y5[i] = y[i] + h * (_B1 * k1[i] + _B3 * k3[i] + _B4 * k4[i]
                                + _B5 * k5[i] + _B6 * k6[i])
        _rhs(mode, r + h, y5, tau, q, nm1, k7)
        err = 0.0
        for i in range(n):
            e = h * (_E1 * k1[i] + _E3 * k3[i] + _E4 * k4[i] + _E5 * k5[i]
                     + _E6 * k6[i] + _E7 * k7[i])
            sc = atol + rtol * max(abs(y[i]), abs(y5[i]))
            err = max(err, abs(e) / sc)
        steps += 1
        if err <= 1.0:
            r = r + h
            for i in range(n):
                y[i] = y5[i]
                k1[i] = k7[i]
            fac = 5.0 if err == 0.0 else min(5.0, 0.9 * err ** -0.2)
        else:
            fac = max(0.2, 0.9 * err ** -0.2)
        h_new = h * fac
        if abs(h_new) < 1e-14 * max(1.0, abs(r)):
            return h, -1
        if err <= 1.0 and direction * (r1 - r) <= 0.0:
            return h_new, steps
        h = h_new
    return h, steps


@njit(cache=True)
def prufer_angle(theta0, a, b, tau, q, nm1, rtol, atol, max_steps):
    """Prufer angle at ``b`` starting from ``theta0`` at ``a``; nan on failure."""
    y = np.empty(1)
    y[0] = theta0
    _, steps = _advance(PRUFER, y, a, b, tau, q, nm1, rtol, atol, (b - a) / 64.0, max_steps)
    if steps < 0:
        return np.nan
    return y[0]


@njit(cache=True)
def linear_on_grid(y0, grid, forward, tau, q, nm1, rtol, atol, max_steps):
    """Integrate ``(v, r^(N-1) v')`` across ``grid``, from grid[0] when
    ``forward`` else from grid[-1]; returns an (m, 2) array, nan on failure."""
    m = grid.shape[0]
    out = np.empty((m, 2))
    y = y0.copy()
    h = (grid[-1] - grid[0]) / 64.0
    if forward:
        out[0, 0] = y[0]
        out[0, 1] = y[1]
        for i in range(1, m):
            h, steps = _advance(LINEAR, y, grid[i - 1], grid[i], tau, q, nm1, rtol, atol, h, max_steps)
            if steps < 0:
                out[:, :] = np.nan
                return out
            out[i, 0] = y[0]
            out[i, 1] = y[1]
    else:
        h = -h
        out[m - 1, 0] = y[0]
        out[m - 1, 1] = y[1]
        for i in range(m - 2, -1, -1):
            h, steps = _advance(LINEAR, y, grid[i + 1], grid[i], tau, q, nm1, rtol, atol, h, max_steps)
            if steps < 0:
                out[:, :] = np.nan
                return out
            out[i, 0] = y[0]
            out[i, 1] = y[1]
    return out
