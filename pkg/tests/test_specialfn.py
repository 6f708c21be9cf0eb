import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, special

from glrg.errors import DivergenceError, DomainError, PoleError
from glrg.specialfn import (
    EULER_GAMMA,
    bessel_k,
    bessel_k_array,
    bessel_k_scaled,
    digamma_at_one,
    feynman_b,
    feynman_c,
    gamma,
    gamma_zeta_even,
    rgamma,
    riemann_zeta,
    zeta_tail,
)

from conftest import rel

mp.mp.dps = 30


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 1.5, 2.5, 7.3, 20.0, 50.0, 120.5,
                               -0.5, -1.5, -2.7, -10.3, -19.9])
def test_gamma_matches_stdlib(x):
    assert rel(gamma(x), math.gamma(x)) < 1e-14


@pytest.mark.parametrize("n", [0, -1, -2, -7])
def test_gamma_pole_and_rgamma_zero(n):
    with pytest.raises(PoleError):
        gamma(n)
    with pytest.raises(PoleError):
        gamma(n + 5e-7)
    assert rgamma(n) == 0.0


@given(st.floats(-15.0, 40.0))
def test_rgamma_times_gamma_is_one(x):
    if abs(x - round(x)) < 1e-3 and x < 0.5:
        return
    assert abs(gamma(x) * rgamma(x) - 1.0) < 1e-13


@given(st.floats(0.2, 30.0))
def test_gamma_recurrence(x):
    assert rel(gamma(x + 1.0), x * gamma(x)) < 1e-13


def test_digamma_at_one_against_finite_difference():
    h = 1e-5
    fd = (math.lgamma(1 + h) - math.lgamma(1 - h)) / (2 * h)
    assert abs(digamma_at_one() - fd) < 1e-9
    assert digamma_at_one() == -EULER_GAMMA


@pytest.mark.parametrize("z", [-19.5, -7.0, -3.3, -1.0, -0.5, -1e-3, 0.0, 0.3, 0.5,
                               0.9, 1.1, 2.0, 3.7, 10.0, 40.0, 70.0])
def test_zeta_matches_mpmath(z):
    ref = float(mp.zeta(z))
    if ref == 0.0:
        assert riemann_zeta(z) == pytest.approx(0.0, abs=1e-15)
    else:
        assert rel(riemann_zeta(z), ref) < 2e-14


def test_zeta_known_values():
    assert rel(riemann_zeta(2.0), math.pi ** 2 / 6) < 1e-15
    assert rel(riemann_zeta(4.0), math.pi ** 4 / 90) < 1e-15
    assert riemann_zeta(0.0) == -0.5
    assert riemann_zeta(-2.0) == 0.0 or abs(riemann_zeta(-2.0)) < 1e-17


def test_zeta_pole_and_laurent_constant():
    with pytest.raises(PoleError):
        riemann_zeta(1.0)
    # lim_{z->1} [zeta(z) - 1/(z-1)] = gamma_E
    for eps in (1e-3, -1e-3):
        assert abs(riemann_zeta(1 + eps) - 1 / eps - EULER_GAMMA) < 1e-3


@pytest.mark.parametrize("s,n", [(1.2, 1), (1.2, 50), (2.0, 3), (3.5, 1000), (5.0, 12)])
def test_zeta_tail(s, n):
    assert rel(zeta_tail(s, n), float(mp.zeta(s, n))) < 1e-14


def test_gamma_zeta_even_reflection_point():
    assert rel(gamma_zeta_even(-1.0), 1.2020569031595942 / (2 * math.pi ** 2)) < 1e-14
    # Gamma(-1/2) zeta(-1) = (-2 sqrt(pi)) (-1/12)
    assert rel(gamma_zeta_even(-0.5), math.sqrt(math.pi) / 6) < 1e-14


@given(st.floats(-3.9, 3.9))
def test_gamma_zeta_even_matches_product(s):
    if min(abs(s - k / 2) for k in range(-8, 9)) < 1e-2:
        return
    ref = float(mp.gamma(s) * mp.zeta(2 * s))
    assert rel(gamma_zeta_even(s), ref) < 1e-12


@given(st.floats(-2.4, 2.4))
def test_gamma_zeta_even_continuous_through_trivial_zeros(s):
    n = round(s)
    if n >= 0 or abs(s - n) > 0.05:
        return
    left, right = gamma_zeta_even(n - 1e-5), gamma_zeta_even(n + 1e-5)
    assert abs(left - right) < 1e-4 * abs(gamma_zeta_even(float(n)))


@pytest.mark.parametrize("nu", [0.0, 0.25, 0.5, 1.0, 1.5, 2.3, 5.0, -0.75])
@pytest.mark.parametrize("x", [1e-6, 0.01, 0.3, 1.0, 1.9, 2.1, 7.5, 40.0, 300.0])
def test_bessel_k_matches_mpmath(nu, x):
    ref = float(mp.besselk(nu, x) * mp.exp(x))
    assert rel(bessel_k_scaled(nu, x), ref) < 1e-13


def test_bessel_k_half_closed_form():
    for x in (0.1, 1.0, 5.0):
        assert rel(bessel_k(0.5, x), math.sqrt(math.pi / (2 * x)) * math.exp(-x)) < 1e-14


@given(st.floats(0.05, 4.0), st.floats(0.05, 30.0))
def test_bessel_recurrence(nu, x):
    k = bessel_k_array(nu, np.array([x]))[0]
    lhs = bessel_k_array(nu + 1, np.array([x]))[0]
    rhs = bessel_k_array(nu - 1, np.array([x]))[0] + 2 * nu / x * k
    assert rel(lhs, rhs) < 1e-12


@given(st.floats(0.0, 4.0), st.floats(0.05, 30.0))
def test_bessel_even_in_order(nu, x):
    assert rel(bessel_k_scaled(-nu, x), bessel_k_scaled(nu, x)) < 1e-14


@given(st.floats(0.3, 3.0))
def test_bessel_small_argument_form(nu):
    z = 1e-6
    assert rel(bessel_k(nu, z), 0.5 * math.gamma(nu) * (z / 2) ** -nu) < 1e-3


def test_bessel_scipy_agreement_on_grid():
    x = np.geomspace(1e-3, 500, 200)
    for nu in (0.0, 0.3, 1.7, 4.4):
        ours = np.array([bessel_k_scaled(nu, v) for v in x])
        assert np.max(np.abs(ours / special.kve(nu, x) - 1)) < 1e-12


def test_bessel_rejects_nonpositive_argument():
    with pytest.raises(DomainError):
        bessel_k(0.5, 0.0)


def test_feynman_b_three_is_pi():
    assert rel(feynman_b(3.0), math.pi) < 1e-15


@pytest.mark.parametrize("D", [2.2, 2.5, 3.0, 3.5, 4.7, 7.0])
def test_feynman_b_quadrature_oracle(D):
    alpha = D / 2 - 2
    ref, _ = integrate.quad(lambda x: 1.0, 0, 1, weight="alg", wvar=(alpha, alpha),
                            epsabs=0, epsrel=1e-13)
    assert rel(feynman_b(D), ref) < 1e-11


@pytest.mark.parametrize("D", [4.3, 4.5, 5.0, 5.9])
def test_feynman_c_quadrature_oracle(D):
    alpha = D / 2 - 3
    ref, _ = integrate.quad(lambda x: 1.0, 0, 1, weight="alg", wvar=(alpha, alpha),
                            epsabs=0, epsrel=1e-13)
    assert rel(feynman_c(D), ref) < 1e-11


@given(st.floats(4.01, 9.0))
def test_feynman_c_is_shifted_b(D):
    assert rel(feynman_c(D), feynman_b(D - 2)) < 1e-14


@pytest.mark.parametrize("D", [2.0, 1.999, 1.0, -3.0])
def test_feynman_b_peierls_regime(D):
    with pytest.raises(DivergenceError, match="D > 2"):
        feynman_b(D)


@pytest.mark.parametrize("D", [4.0, 3.0, 0.5])
def test_feynman_c_peierls_regime(D):
    with pytest.raises(DivergenceError, match="D > 4"):
        feynman_c(D)
