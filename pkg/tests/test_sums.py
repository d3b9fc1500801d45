import math

import mpmath
import numpy as np
import pytest
from scipy import special

from ljlattice.errors import ConvergenceError, DomainError
from ljlattice.lattice import make_lattice, square, triangular
from ljlattice.sums import (
    SumControl,
    bessel_k0,
    bessel_k0_laplace,
    epstein_zeta_accelerated,
    epstein_zeta_direct,
    epstein_zeta_direct_with_error,
    gaussian_sum,
    normalized_form,
    theta,
    theta_normalized,
    theta_with_error,
)
from ljlattice.verify import random_lattices


def brute_norms(lat, span=60):
    a, b, c = lat.form()
    m, n = np.meshgrid(np.arange(-span, span + 1), np.arange(-span, span + 1), indexing="ij")
    q = a * m * m + b * m * n + c * n * n
    return q[(m != 0) | (n != 0)]


def dirichlet_l_minus3(s):
    # L(s, chi_-3) from Hurwitz zeta values
    return 3.0**-s * (mpmath.zeta(s, mpmath.mpf(1) / 3) - mpmath.zeta(s, mpmath.mpf(2) / 3))


def test_square_zeta_closed_form():
    # sum over Z^2 of (m^2+n^2)^-2 = 4 zeta(2) beta(2)
    expected = 4 * mpmath.zeta(2) * mpmath.catalan
    assert epstein_zeta_accelerated(square(1.0), 4.0) == pytest.approx(float(expected), rel=1e-12)
    # the power-law tail needs a looser target at s = 4
    assert epstein_zeta_direct(square(1.0), 4.0, SumControl(rel_tol=1e-10)) == pytest.approx(float(expected), rel=1e-9)


def test_direct_sum_refuses_unreachable_tolerance():
    with pytest.raises(ConvergenceError):
        epstein_zeta_direct(square(1.0), 3.5)


@pytest.mark.parametrize("s", [6.0, 12.0, 5.0])
def test_triangular_zeta_closed_form(s):
    # unit-distance triangular lattice: sum (m^2+mn+n^2)^-k = 6 zeta(k) L(k, chi_-3)
    k = s / 2
    expected = float(6 * mpmath.zeta(k) * dirichlet_l_minus3(k))
    lat = make_lattice(1.0, 1.0, math.pi / 3)
    assert epstein_zeta_accelerated(lat, s) == pytest.approx(expected, rel=1e-12)
    assert epstein_zeta_direct(lat, s) == pytest.approx(expected, rel=1e-10)


def test_zeta_against_brute_force():
    lat = make_lattice(1.0, 1.3, 1.4)
    q = brute_norms(lat, span=150)
    brute = float(np.sum(q**-6.0))
    # truncation of the 301x301 block is below 1e-9 relative for s = 12
    assert epstein_zeta_accelerated(lat, 12.0) == pytest.approx(brute, rel=1e-9)


def test_direct_and_accelerated_agree_on_random_lattices():
    for lat in random_lattices(20, seed=3):
        for s in (6.0, 8.0, 12.0):
            assert epstein_zeta_direct(lat, s) == pytest.approx(epstein_zeta_accelerated(lat, s), rel=1e-9)


def test_direct_error_bound_is_honest():
    for lat in random_lattices(10, seed=4):
        value, err = epstein_zeta_direct_with_error(lat, 6.0, SumControl(rel_tol=1e-5))
        exact = epstein_zeta_accelerated(lat, 6.0)
        assert abs(value - exact) <= err * (1 + 1e-6) + 1e-14 * exact
        assert err <= 1e-5 * exact


def test_zeta_domain():
    with pytest.raises(DomainError):
        epstein_zeta_direct(square(1.0), 2.0)
    with pytest.raises(DomainError):
        epstein_zeta_accelerated(square(1.0), 1.5)


def test_theta_square_matches_jacobi_theta():
    for alpha in (0.2, 1.0, 3.0):
        q = mpmath.exp(-2 * mpmath.pi * alpha)
        expected = float(mpmath.jtheta(3, 0, q) ** 2)
        assert theta(square(1.0), alpha) == pytest.approx(expected, rel=1e-13)


def test_theta_error_bound_is_honest():
    lat = make_lattice(1.0, 1.6, 1.3)
    for alpha in (0.05, 0.5, 2.0):
        value, err = theta_with_error(lat, alpha, SumControl(rel_tol=1e-6))
        exact = theta(lat, alpha)
        assert abs(value - exact) <= err * (1 + 1e-6) + 1e-15 * exact


def test_modular_identity():
    for lat in random_lattices(30, seed=5):
        form = normalized_form(lat)
        assert 4 * form.a * form.c - form.b**2 == pytest.approx(1.0, abs=1e-12)
        for alpha in (0.1, 0.37, 1.0, 2.5, 10.0):
            lhs = theta_normalized(form, 1 / alpha)
            rhs = alpha * theta_normalized(form, alpha)
            assert abs(lhs - rhs) <= 1e-10 * rhs


def test_gaussian_sum_against_brute_force():
    lat = make_lattice(1.0, 1.2, 1.3)
    q = brute_norms(lat, span=40)
    for y in (0.05, 0.3, 2.0):
        brute = float(np.sum(np.exp(-q / (4 * y))))
        assert gaussian_sum(lat, y) == pytest.approx(brute, rel=1e-12, abs=1e-300)


def test_gaussian_sum_triangular_below_square():
    assert gaussian_sum(triangular(1.0), 0.5) < gaussian_sum(square(1.0), 0.5)


@pytest.mark.parametrize("x", [0.01, 0.1, 0.5, 1.0, 2.0, 7.5, 20.0, 30.0])
def test_k0_matches_scipy(x):
    ref = special.k0(x)
    assert bessel_k0(x) == pytest.approx(ref, rel=1e-12)
    assert bessel_k0_laplace(x) == pytest.approx(ref, rel=1e-12)


def test_k0_large_argument_asymptotics():
    x = 30.0
    series = math.sqrt(math.pi / (2 * x)) * math.exp(-x) * (1 - 1 / (8 * x) + 9 / (128 * x**2) - 225 / (3072 * x**3))
    assert bessel_k0(x) == pytest.approx(series, rel=1e-6)


def test_k0_small_argument_series():
    x = 0.01
    euler = 0.5772156649015329
    series = -(math.log(x / 2) + euler) * (1 + x * x / 4) + x * x / 4
    assert bessel_k0(x) == pytest.approx(series, rel=1e-8)


def test_k0_reference_value():
    assert abs(bessel_k0(1.0) - 0.4210244382) <= 1e-9


def test_k0_domain():
    for f in (bessel_k0, bessel_k0_laplace):
        with pytest.raises(DomainError):
            f(0.0)
