import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from robinshell.errors import DomainError
from robinshell.specfun import bessel_j, bessel_y, jprime_zero, jprime_zeros

mpmath.mp.dps = 30


def series_j(n, x, terms=60):
    # independent power series, summed in extended precision
    x = mpmath.mpf(x)
    return sum((-1) ** m / (mpmath.factorial(m) * mpmath.gamma(m + n + 1)) * (x / 2) ** (2 * m + n)
               for m in range(terms))


@pytest.mark.parametrize("n,x", [(0, 0.3), (1, 2.0), (2, 5.5), (5, 1.2), (3, 9.0)])
def test_j_matches_series(n, x):
    assert bessel_j(n, x).value == pytest.approx(float(series_j(n, x)), rel=1e-13, abs=1e-15)


@pytest.mark.parametrize("n,x", [(0, 0.3), (1, 2.0), (2, 15.0), (4, 40.0), (7, 3.0)])
def test_values_and_derivatives_against_mpmath(n, x):
    j, y = bessel_j(n, x), bessel_y(n, x)
    assert j.value == pytest.approx(float(mpmath.besselj(n, x)), rel=1e-12, abs=1e-15)
    assert j.derivative == pytest.approx(float(mpmath.besselj(n, x, derivative=1)), rel=1e-12, abs=1e-15)
    assert y.value == pytest.approx(float(mpmath.bessely(n, x)), rel=1e-12)
    assert y.derivative == pytest.approx(float(mpmath.bessely(n, x, derivative=1)), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10), st.floats(0.05, 80.0))
def test_wronskian(n, x):
    j, y = bessel_j(n, x), bessel_y(n, x)
    w = j.value * y.derivative - j.derivative * y.value
    assert w == pytest.approx(2 / (math.pi * x), rel=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 6), st.floats(0.5, 30.0))
def test_derivative_matches_finite_difference(n, x):
    d = 1e-5
    fd = (bessel_j(n, x + d).value - bessel_j(n, x - d).value) / (2 * d)
    assert bessel_j(n, x).derivative == pytest.approx(fd, abs=1e-8)


@pytest.mark.parametrize("l", [0, 1, 2, 5, 10])
def test_jprime_zeros_against_mpmath(l):
    zs = jprime_zeros(l, 5)
    # the trivial zero of J_0' at the origin is not counted
    offset = 1 if l == 0 else 0
    for k, z in enumerate(zs, 1):
        ref = float(mpmath.besseljzero(l, k + offset, derivative=1))
        assert z == pytest.approx(ref, rel=1e-12)
    assert jprime_zero(l, 3) == zs[2]


@pytest.mark.parametrize("l", [1, 2, 3, 8])
def test_jprime_zeros_interlace(l):
    zp = jprime_zeros(l, 4)
    z = [float(mpmath.besseljzero(l, k)) for k in range(1, 5)]
    assert l < zp[0]
    for k in range(3):
        assert zp[k] < z[k] < zp[k + 1]


def test_domain_errors():
    with pytest.raises(DomainError):
        bessel_j(-1, 1.0)
    with pytest.raises(DomainError):
        bessel_y(0, 0.0)
    with pytest.raises(DomainError):
        bessel_y(0.5, 1.0)
