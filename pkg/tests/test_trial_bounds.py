import math

import numpy as np
import pytest
from scipy.integrate import dblquad

from robinshell.errors import DomainError, MeasureMismatchError
from robinshell.radial_sl import DIRICHLET, ModeProblem, ShellGeometry
from robinshell.trial_bounds import (ConcentricShell, EccentricShell, StarShell,
                                     check_long_inequality, domain_volume, extend_profile,
                                     radial_integral, symmetry_identity_check,
                                     weinberger_quotient)
from robinshell.thresholds import find_h0

from conftest import UNIT, UNIT3


def profile(g, l, h, r_max=1.6):
    return extend_profile(ModeProblem(g, l, h), r_max)


def polar_quotient(domain, prof, l, h):
    """Direct 2-D polar quadrature, independent of the radial antiderivative."""
    def rho(t):
        return float(domain.boundary_radius(t))

    def num_f(r, t):
        G, dG = prof.value(r), prof.derivative(r)
        return (dG * dG + l * l * G * G / (r * r)) * r

    def den_f(r, t):
        return prof.value(r) ** 2 * r

    opts = dict(epsabs=1e-12, epsrel=1e-10)
    num = dblquad(num_f, 0, 2 * math.pi, domain.alpha, rho, **opts)[0]
    den = dblquad(den_f, 0, 2 * math.pi, domain.alpha, rho, **opts)[0]
    num += h * domain.alpha * 2 * math.pi * prof.value(domain.alpha) ** 2
    return num / den


def test_measures():
    for d in (ConcentricShell(0.5, 1.0), EccentricShell(0.5, 1.0, 0.2), StarShell(0.5, 1.0, (0.08, 0.02), 8),
              EccentricShell(0.5, 1.0, 0.2, 3)):
        ref = domain_volume(d)
        assert radial_integral(d, lambda r: np.ones_like(r)) == pytest.approx(ref, rel=1e-10)
    assert domain_volume(ConcentricShell(0.5, 1.0, 3)) == pytest.approx(4 * math.pi / 3 * (1 - 0.125))


@pytest.mark.parametrize("g", [UNIT, UNIT3], ids=["N2", "N3"])
@pytest.mark.parametrize("l,h", [(0, -0.8), (1, -0.8), (2, 0.5), (1, DIRICHLET), (0, 2.0)])
def test_concentric_equality(g, l, h):
    prof = profile(g, l, h)
    q = weinberger_quotient(ConcentricShell(0.5, 1.0, g.dimension), prof)
    assert q == pytest.approx(prof.tau, rel=1e-8, abs=1e-9)


def test_quadrature_matches_direct_polar_integration():
    d = EccentricShell(0.5, 1.0, 0.15)
    prof = profile(UNIT, 1, -0.8)
    assert weinberger_quotient(d, prof) == pytest.approx(polar_quotient(d, prof, 1, -0.8), rel=1e-7)


@pytest.mark.parametrize("domain", [EccentricShell(0.5, 1.0, 0.3), StarShell(0.5, 1.0, (0.08, 0.02), 8),
                                    StarShell(0.5, 1.0, (0.12,), 4)], ids=["ecc", "star8", "star4"])
@pytest.mark.parametrize("l,h", [(0, -0.8), (1, -0.8), (2, 0.5), (1, DIRICHLET), (0, 0.0)])
def test_strict_bound_off_concentric(domain, l, h):
    prof = profile(UNIT, l, h)
    gap = prof.tau - weinberger_quotient(domain, prof)
    if l == 0 and h == 0:
        assert abs(gap) < 1e-10
    else:
        assert gap > 1e-7


@pytest.mark.parametrize("frac", [0.05, 0.3, 0.6])
@pytest.mark.parametrize("l,h", [(0, 0.5), (1, -0.8), (2, DIRICHLET)])
def test_spherical_eccentric_strict(frac, l, h):
    d = EccentricShell(0.5, 1.0, frac * 0.5, 3)
    prof = profile(UNIT3, l, h)
    assert prof.tau - weinberger_quotient(d, prof) > 0


def test_rotation_and_offset_sign_invariance():
    prof = profile(UNIT, 1, -0.8)
    a = weinberger_quotient(EccentricShell(0.5, 1.0, 0.2), prof)
    b = weinberger_quotient(EccentricShell(0.5, 1.0, -0.2), prof)
    assert a == pytest.approx(b, rel=1e-10)
    s0 = weinberger_quotient(StarShell(0.5, 1.0, (0.08, 0.02), 8), prof)
    s1 = weinberger_quotient(StarShell(0.5, 1.0, (0.08, 0.02), 8, phase=0.3), prof)
    assert s0 == pytest.approx(s1, rel=1e-10)


def test_neumann_constant_mode_has_zero_quotient():
    prof = profile(UNIT, 0, 0.0)
    assert abs(weinberger_quotient(EccentricShell(0.5, 1.0, 0.4), prof)) < 1e-12


def test_rejections():
    with pytest.raises(DomainError):
        EccentricShell(0.5, 1.0, 0.5)
    with pytest.raises(DomainError):
        StarShell(0.5, 1.0, (0.6,), 4)
    prof = profile(UNIT, 1, -0.8, r_max=1.0)
    with pytest.raises(DomainError):
        weinberger_quotient(EccentricShell(0.5, 1.0, 0.3), prof)
    # a profile of a different shell does not fit the domain's measure
    other = extend_profile(ModeProblem(ShellGeometry(2, 0.5, 1.2), 1, -0.8), 1.6)
    with pytest.raises((DomainError, MeasureMismatchError)):
        weinberger_quotient(ConcentricShell(0.5, 1.0), other)


@pytest.mark.parametrize("l", [0, 1, 2, 4])
@pytest.mark.parametrize("h", [-5.0, -0.8, 0.0, 1.0, DIRICHLET])
def test_long_inequality(l, h):
    m = check_long_inequality(ModeProblem(UNIT, l, h))
    assert m.minimum >= -1e-9
    assert abs(m.endpoint) <= 1e-10


def test_long_inequality_near_h0():
    h0 = find_h0(UNIT, 2).value
    for h in (h0 * (1 + 1e-3), h0 * (1 - 1e-3)):
        assert check_long_inequality(ModeProblem(UNIT, 2, h)).minimum >= -1e-9


def test_symmetry_identities():
    dom = StarShell(0.5, 1.0, (0.08, 0.02), 8)
    prof = profile(UNIT, 1, -0.8)
    kinds = [symmetry_identity_check(dom, prof, i) for i in (1, 2, 3, 4)]
    assert [k.identity for k in kinds] == ["halving"] * 3 + ["pair_sum"]
    assert max(k.deviation for k in kinds) < 1e-9
    assert max(k.orthogonality_max for k in kinds) < 1e-9
    with pytest.raises(IndexError):
        symmetry_identity_check(dom, prof, 5)
    conc = symmetry_identity_check(ConcentricShell(0.5, 1.0), prof, 7)
    assert conc.identity == "halving" and conc.deviation < 1e-9


def test_order_two_domain_has_only_the_pair_sum():
    dom = StarShell(0.5, 1.0, (0.15,), 2)
    prof = profile(UNIT, 1, -0.8)
    rep = symmetry_identity_check(dom, prof, 1)
    assert rep.identity == "pair_sum" and rep.deviation < 1e-9
    with pytest.raises(IndexError):
        symmetry_identity_check(dom, prof, 2)
