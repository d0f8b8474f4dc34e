import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import comb

from robinshell.closed_form import disk_neumann_spectrum, expand
from robinshell.errors import DomainError
from robinshell.radial_sl import DIRICHLET, ModeProblem, ShellGeometry, sl_eigenvalue
from robinshell.shell_spectrum import (assemble_spectrum, mode_eigenvalues, multiplicity_lambda,
                                       ordering_chain_holds, position_of_first_angular,
                                       second_eigenfunction_is_radial)

from conftest import UNIT, UNIT3, WIDE


def brute_force(g, h, count, lmax=12, jmax=10):
    vals = sorted(sl_eigenvalue(ModeProblem(g, l, h), j)
                  for l in range(lmax + 1) for j in range(1, jmax + 1)
                  for _ in range(multiplicity_lambda(l, g.dimension)))
    return vals[:count]


@pytest.mark.parametrize("N,expected", [(2, [1, 2, 2, 2, 2]), (3, [1, 3, 5, 7, 9]), (4, [1, 4, 9, 16, 25])])
def test_multiplicity(N, expected):
    assert [multiplicity_lambda(l, N) for l in range(5)] == expected


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.integers(0, 8))
def test_multiplicity_is_harmonic_dimension(N, l):
    # homogeneous harmonic polynomials: dim P_l - dim P_{l-2}
    dim = comb(l + N - 1, N - 1, exact=True) - (comb(l + N - 3, N - 1, exact=True) if l >= 2 else 0)
    assert multiplicity_lambda(l, N) == dim


@pytest.mark.parametrize("g,h", [(WIDE, -0.8), (UNIT, 1.0), (UNIT3, 0.5), (UNIT, DIRICHLET)])
def test_assembly_matches_brute_force(g, h):
    ref = brute_force(g, h, 15)
    spec = assemble_spectrum(g, h, 15, "sl")
    assert [e.k for e in spec] == list(range(1, 16))
    assert [e.tau for e in spec] == pytest.approx(ref, rel=1e-13, abs=1e-14)
    auto = assemble_spectrum(g, h, 15)
    assert [e.tau for e in auto] == pytest.approx(ref, rel=1e-9, abs=1e-12)
    assert all(a.tau <= b.tau for a, b in zip(spec, spec[1:]))


def test_wide_shell_ordering():
    spec = assemble_spectrum(WIDE, -0.8, 4)
    assert [(e.l, e.j) for e in spec] == [(0, 1), (0, 2), (1, 1), (1, 1)]
    assert spec[1].tau == pytest.approx(0.0100829, abs=1e-6)
    assert spec[2].tau == pytest.approx(0.0126485, abs=1e-6)


def test_methods_agree():
    a = assemble_spectrum(WIDE, -0.8, 12, "sl")
    b = assemble_spectrum(WIDE, -0.8, 12, "bessel")
    assert [(e.l, e.j) for e in a] == [(e.l, e.j) for e in b]
    assert max(abs(x.tau - y.tau) for x, y in zip(a, b)) < 1e-8
    with pytest.raises(DomainError):
        mode_eigenvalues(UNIT3, 0.0, 0, 2, "bessel")


@pytest.mark.parametrize("N,h,hole_bc", [(2, 0.0, "neumann"), (3, DIRICHLET, "dirichlet"), (3, 0.0, "neumann")])
def test_small_hole_continuity(N, h, hole_bc):
    count = 6
    spec = [e.tau for e in assemble_spectrum(ShellGeometry(N, 1e-3, 1.0), h, count)]
    if N == 2:
        ball = expand(disk_neumann_spectrum(1.0, count))[:count]
    else:
        # Neumann ball: zero, then (j'_{1,1} of spherical Bessel)^2 with multiplicity 3
        ball = [0.0] + [2.0815759778181 ** 2] * 3 + [3.3420936578 ** 2] * 2
    mu2 = ball[1]
    for t, mu in zip(spec, ball):
        assert abs(t - mu) <= 0.02 * max(mu, mu2)


def test_verdicts():
    assert second_eigenfunction_is_radial(WIDE, -0.8).verdict == "radial"
    assert second_eigenfunction_is_radial(WIDE, 0.0).verdict == "nonradial"
    assert second_eigenfunction_is_radial(WIDE, DIRICHLET).verdict == "nonradial"
    v = second_eigenfunction_is_radial(WIDE, -0.8)
    assert v.margin == pytest.approx(v.tau_11 - v.tau_02)


def test_positions():
    assert ordering_chain_holds(UNIT3, 0.5, 2)
    assert list(position_of_first_angular(UNIT3, 0.5, 1).indices) == [2, 3, 4]
    assert list(position_of_first_angular(UNIT3, 0.5, 2).indices) == [5, 6, 7, 8, 9]
    spec = assemble_spectrum(UNIT3, 0.5, 9)
    assert [e.l for e in spec[1:]] == [1, 1, 1, 2, 2, 2, 2, 2]
    # on the wide shell tau_{0,2} sits below tau_{1,1}
    pos = position_of_first_angular(WIDE, -0.8, 1)
    assert not pos.applicable and list(pos.indices) == []
    with pytest.raises(DomainError):
        position_of_first_angular(UNIT, 0.5, 0)


def test_invalid_count():
    with pytest.raises(DomainError):
        assemble_spectrum(UNIT, 0.0, 0)
