import math

import numpy as np
import pytest

from ljlattice.energy import THOMAS_FERMI, lj_energy, tf_energy
from ljlattice.errors import BracketError
from ljlattice.lattice import TRIANGULAR_CHART_LENGTH, square, triangular
from ljlattice.optimize import (
    Classification,
    chart_lattice,
    classify,
    critical_point_check,
    crossover_area,
    hessian_signature,
    levelset,
    minimize_fixed_area,
    minimize_global,
    scaling_minimize,
)

T = TRIANGULAR_CHART_LENGTH


def test_classify_corners():
    assert classify(triangular(1.7))[0] is Classification.TRIANGULAR
    assert classify(square(0.3))[0] is Classification.SQUARE
    assert classify(chart_lattice(1.03, 1.05, 1.0))[0] is Classification.OTHER


def test_levelset_flags_invalid_cells():
    grid = levelset(1.0, "lj", (0.98, 1.08), (0.98, 1.08), 0.02)
    assert grid.values.shape == (6, 6)
    for i, u in enumerate(grid.u_values):
        for j, v in enumerate(grid.v_values):
            expected = u <= v and u * v >= 1.0 - 1e-12
            assert grid.valid[i, j] == expected
            assert math.isnan(grid.values[i, j]) != expected


def test_levelset_minimum_cells():
    u, v, _ = levelset(1.0, "lj", step=0.01).argmin()
    assert math.hypot(u - T, v - T) < 0.015
    assert levelset(2.0, "lj", step=0.01).argmin()[:2] == (1.0, 1.0)


def test_minimize_reports_are_consistent():
    rep = minimize_fixed_area(1.0)
    assert rep.classification is Classification.TRIANGULAR
    assert rep.energy == pytest.approx(lj_energy(rep.argmin), rel=1e-10)
    assert rep.energy <= rep.grid_energy
    assert rep.certificate is not None and not rep.certificate.sufficient_ok
    again = minimize_fixed_area(1.0)
    assert again == rep


def test_minimize_tf():
    rep = minimize_fixed_area(1.0, THOMAS_FERMI)
    assert rep.classification is Classification.TRIANGULAR
    assert rep.energy == pytest.approx(tf_energy(rep.argmin), rel=1e-10)
    assert rep.certificate is None


def test_minimize_certified_area():
    rep = minimize_fixed_area(0.6)
    assert rep.classification is Classification.TRIANGULAR
    assert rep.certificate.sufficient_ok


def test_minimize_global():
    rep = minimize_global()
    a0 = triangular(0.84912)
    assert rep.energy <= lj_energy(a0) + 1e-8
    assert rep.argmin.min_distance > 0.74
    assert rep.identity.zeta_gap <= 1e-5
    assert rep.identity.lengths_ok


def test_scaling_minimize():
    r, e = scaling_minimize(triangular(1.0))
    assert r**2 == pytest.approx(0.84912, abs=5e-5)
    r0, _ = scaling_minimize(triangular(r**2))
    assert r0 == pytest.approx(1.0, abs=1e-9)


def test_crossover():
    a = crossover_area()
    assert 1.13 < a < 1.14
    assert lj_energy(triangular(1.0)) < lj_energy(square(1.0))
    assert lj_energy(triangular(2.0)) > lj_energy(square(2.0))
    with pytest.raises(BracketError):
        crossover_area(1.5, 2.0)


def test_critical_points():
    assert critical_point_check(triangular(1.0), 1.0, chart="lengths").grad_norm <= 1e-4
    assert critical_point_check(square(1.0), 1.0, chart="angle").grad_norm <= 1e-4
    assert critical_point_check(chart_lattice(1.03, 1.05, 1.0), 1.0).grad_norm > 1e-2


def test_hessian_signature_is_finite():
    lo, hi = hessian_signature(triangular(1.0))
    assert np.isfinite([lo, hi]).all() and lo <= hi
