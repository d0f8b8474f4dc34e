import math

import mpmath
import numpy as np
import pytest
from scipy.integrate import simpson
from hypothesis import given, settings, strategies as st

from robinshell.errors import DomainError, InvalidParameterError
from robinshell.radial_sl import (DECREASING, DIP, DIRICHLET, INCREASING, ModeProblem,
                                  ShellGeometry, classify_profile, count_eigenvalues_below,
                                  rayleigh_quotient, sl_eigenfunction, sl_eigenvalue,
                                  tau_h_derivative)
from robinshell.thresholds import find_h0

from conftest import UNIT, UNIT3, WIDE


def spherical_l0_roots(alpha, beta, h, count):
    """tau_{0,j} for N = 3 via u = r v, u'' = -k^2 u, solved independently."""
    def mismatch(k):
        k = mpmath.mpf(k)
        if math.isinf(h):
            A, B = 0, 1 / k
        else:
            A, B = 1, (1 / mpmath.mpf(alpha) + h) / k
        L = beta - alpha
        u = A * mpmath.cos(k * L) + B * mpmath.sin(k * L)
        du = k * (-A * mpmath.sin(k * L) + B * mpmath.cos(k * L))
        return du - u / beta

    ks = np.linspace(1e-3, 60, 60001)
    vals = [float(mismatch(k)) for k in ks]
    roots = []
    for a, b, fa, fb in zip(ks[:-1], ks[1:], vals[:-1], vals[1:]):
        if fa * fb < 0:
            roots.append(float(mpmath.findroot(mismatch, (a, b), solver="anderson")) ** 2)
        if len(roots) == count:
            break
    return roots


@pytest.mark.parametrize("h", [DIRICHLET, 1.0, 0.3])
def test_spherical_radial_modes_match_trig_solution(h):
    ref = spherical_l0_roots(0.5, 1.0, h, 3)
    got = [sl_eigenvalue(ModeProblem(UNIT3, 0, h), j) for j in (1, 2, 3)]
    assert got == pytest.approx(ref, rel=1e-9)


def test_known_dirichlet_value():
    # tan(k/2) = k on the unit shell of radius ratio 1/2
    assert sl_eigenvalue(ModeProblem(UNIT3, 0, DIRICHLET), 1) == pytest.approx(5.434131505, abs=1e-8)


def test_neumann_ground_state_is_constant():
    for g in (UNIT, UNIT3, WIDE):
        assert abs(sl_eigenvalue(ModeProblem(g, 0, 0.0), 1)) < 1e-10


@pytest.mark.parametrize("g", [UNIT, UNIT3, WIDE], ids=["unit2", "unit3", "wide"])
@pytest.mark.parametrize("h", [-10.0, -0.8, 0.0, 1.0, DIRICHLET])
def test_row_and_column_monotonicity(g, h):
    t = [[sl_eigenvalue(ModeProblem(g, l, h), j) for j in (1, 2, 3)] for l in (0, 1, 2, 3)]
    for row in t:
        assert row[0] < row[1] < row[2]
    for j in range(3):
        assert all(t[l][j] < t[l + 1][j] for l in range(3))
    assert t[0][1] > 0
    if h != 0:
        assert np.sign(t[0][0]) == np.sign(h)


@settings(max_examples=20, deadline=None)
@given(st.floats(-5, 5), st.floats(0.01, 2), st.integers(0, 3))
def test_monotone_in_h(h, dh, l):
    a = sl_eigenvalue(ModeProblem(UNIT, l, h), 1)
    b = sl_eigenvalue(ModeProblem(UNIT, l, h + dh), 1)
    assert b > a
    assert sl_eigenvalue(ModeProblem(UNIT, l, DIRICHLET), 1) > b


@pytest.mark.parametrize("l,j", [(0, 1), (0, 3), (2, 2)])
def test_counting_function_brackets_eigenvalue(l, j):
    p = ModeProblem(UNIT, l, -0.8)
    t = sl_eigenvalue(p, j)
    eps = 1e-6 * max(1, abs(t))
    assert count_eigenvalues_below(p, t - eps) == j - 1
    assert count_eigenvalues_below(p, t + eps) == j


@pytest.mark.parametrize("l,h,j", [(0, -0.8, 1), (1, -0.8, 2), (2, 1.0, 3), (0, DIRICHLET, 2)])
def test_eigenfunction_shape(l, h, j):
    p = ModeProblem(UNIT, l, h)
    ef = sl_eigenfunction(p, j)
    r = ef.grid
    norm = simpson(r * ef.values ** 2, x=r)
    assert norm == pytest.approx(1.0, rel=1e-6)
    assert ef.values[-1] > 0
    assert ef.zero_count == j - 1
    assert abs(ef.deriv_values[-1]) < 1e-8
    assert rayleigh_quotient(p, r, ef.values, ef.deriv_values) == pytest.approx(ef.tau, rel=1e-7, abs=1e-9)
    if h == DIRICHLET:
        assert abs(ef.values[0]) < 1e-8
    else:
        # Robin condition at the inner radius
        assert -ef.deriv_values[0] + h * ef.values[0] == pytest.approx(0, abs=1e-8)


@pytest.mark.parametrize("g,l,h", [(UNIT, 0, -0.8), (UNIT, 2, 0.5), (UNIT3, 1, -0.8), (WIDE, 1, -0.8)])
def test_h_derivative_identity(g, l, h):
    p = ModeProblem(g, l, h)
    d = 1e-5
    fd = (sl_eigenvalue(p.with_h(h + d), 1) - sl_eigenvalue(p.with_h(h - d), 1)) / (2 * d)
    assert tau_h_derivative(p, 1) == pytest.approx(fd, rel=1e-5)
    with pytest.raises(InvalidParameterError):
        tau_h_derivative(p.with_h(DIRICHLET), 1)


def test_profile_classes():
    h0 = find_h0(UNIT, 1).value
    assert classify_profile(ModeProblem(UNIT, 1, DIRICHLET)).kind == INCREASING
    assert classify_profile(ModeProblem(UNIT, 1, h0 - 0.3)).kind == DECREASING
    dip = classify_profile(ModeProblem(UNIT, 1, 0.5 * h0))
    assert dip.kind == DIP and UNIT.alpha < dip.gamma < UNIT.beta
    with pytest.raises(DomainError):
        classify_profile(ModeProblem(UNIT, 0, 1.0))


def test_invalid_inputs():
    with pytest.raises(DomainError):
        ShellGeometry(1, 0.5, 1.0)
    with pytest.raises(DomainError):
        ShellGeometry(2, 1.0, 0.5)
    with pytest.raises((DomainError, InvalidParameterError)):
        ModeProblem(UNIT, -1, 0.0)
    with pytest.raises((DomainError, InvalidParameterError)):
        ModeProblem(UNIT, 0, math.nan)
    with pytest.raises(DomainError):
        sl_eigenvalue(ModeProblem(UNIT, 0, 0.0), 0)
