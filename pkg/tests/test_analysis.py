import math

import pytest
from scipy import special

from ljlattice.analysis import (
    THRESHOLD_AREA,
    RatioFunction,
    blanc_bound,
    check_energy_decomposition,
    g_cert,
    g_cert_derivative,
    global_identity_check,
    optimal_triangular_area,
    ratio_function,
    ratio_infimum_scan,
    riemann_constant,
    sufficient_condition,
)
from ljlattice.errors import DomainError, SingularityError
from ljlattice.lattice import TRIANGULAR_CHART_LENGTH, FixedAreaPoint, from_fixed_area_chart, square, triangular
from ljlattice.optimize import crossover_area
from ljlattice.verify import random_lattices


def test_threshold_value():
    assert THRESHOLD_AREA == pytest.approx(0.63693, abs=1e-5)
    # g_A(1) = pi^3 / (60 A^3) - 2 vanishes exactly at the threshold
    assert g_cert(THRESHOLD_AREA, 1.0) == pytest.approx(0.0, abs=1e-12)


def test_g_cert_formula_and_derivatives():
    a = 0.6
    k = math.pi**3 / (120 * a**3)
    for x in (1.0, 1.5, 4.0):
        assert g_cert(a, x) == pytest.approx(k * (x**6 + x**-5) - x**3 - x**-2, rel=1e-14)
        h = 1e-6
        fd = (g_cert(a, x + h) - g_cert(a, x - h)) / (2 * h) if x > 1 else (g_cert(a, x + h) - g_cert(a, x)) / h
        assert g_cert_derivative(a, x) == pytest.approx(fd, abs=1e-4)
    with pytest.raises(DomainError):
        g_cert(a, 0.5)


def test_sufficient_condition_flip():
    assert sufficient_condition(THRESHOLD_AREA).sufficient_ok
    assert sufficient_condition(THRESHOLD_AREA * (1 - 1e-12)).sufficient_ok
    assert not sufficient_condition(THRESHOLD_AREA * (1 + 1e-12)).sufficient_ok
    rep = sufficient_condition(0.6)
    assert rep.g_min_sampled >= 0 and rep.g_at_one > 0 and rep.g_prime_at_one > 0
    assert sufficient_condition(1.0).g_at_one < 0


def test_blanc_constants_against_zeta_oracle():
    b = blanc_bound()
    # sum_{k>=2} (16k + 8)/k^12 and (32k + 16)/k^6 via Riemann zeta
    p = 16 * (special.zeta(11) - 1) + 8 * (special.zeta(12) - 1)
    q = 32 * (special.zeta(5) - 1) + 16 * (special.zeta(6) - 1)
    assert b.p_const == pytest.approx(p, rel=1e-13)
    assert b.q_const == pytest.approx(q, rel=1e-13)
    assert b.p_const == pytest.approx(0.00988, abs=1e-5)
    assert b.q_const == pytest.approx(1.45918, abs=1e-5)
    assert abs(b.recompute() - b.c_bound) <= 1e-12
    # the bound itself rounds to 0.74035 at five decimals
    assert round(b.c_bound, 5) == 0.74035


def test_optimal_triangular_area():
    a0, length, e = optimal_triangular_area()
    assert a0 == pytest.approx(0.84912, abs=5e-5)
    assert length == pytest.approx(0.99019, abs=5e-5)
    assert e == pytest.approx(-6.76425, abs=5e-5)
    rep = global_identity_check(triangular(a0))
    assert rep.zeta_gap < 1e-12
    assert abs(rep.energy_residual) / abs(rep.energy) < 1e-8
    assert rep.lengths_ok


def test_ratio_at_square_is_crossover():
    # ratio(Z^2)^3 solves E(sqrt(A) T) = E(sqrt(A) Z^2), which is the crossover area
    r = ratio_function(FixedAreaPoint(1.0, 1.0))
    assert r == pytest.approx(crossover_area(), abs=1e-9)


def test_ratio_singular_corner():
    t = TRIANGULAR_CHART_LENGTH
    with pytest.raises(SingularityError):
        ratio_function(FixedAreaPoint(t, t))
    f = RatioFunction()
    assert f.near_singular(from_fixed_area_chart(FixedAreaPoint(t, t + 5e-4)))


def test_ratio_scan_reference_point():
    scan = ratio_infimum_scan()
    assert math.hypot(scan.point.len_u - 1.014, scan.point.len_v - 1.014) <= 0.01
    assert scan.value == pytest.approx(1.1378475, abs=1e-3)
    assert scan.value <= scan.grid_value


def test_riemann_decomposition():
    assert riemann_constant(1.0) == pytest.approx(math.pi**6 / 3600 - math.pi**3 / 6, rel=1e-14)
    for lat in random_lattices(10, seed=32, area_range=(1.0, 1.0)):
        assert check_energy_decomposition(lat) <= 1e-8
