import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from ljlattice.energy import (
    LENNARD_JONES,
    THOMAS_FERMI,
    PotentialKind,
    PotentialSpec,
    ScalingProfile,
    energy,
    energy_under_scaling,
    lj_energy,
    lj_potential,
    pair_energy,
    tf_energy,
    tf_energy_layer,
    tf_potential,
)
from ljlattice.errors import DomainError
from ljlattice.lattice import make_lattice, scale, square, triangular
from ljlattice.verify import random_lattices


def brute_pair_sum(lat, f, span):
    a, b, c = lat.form()
    m, n = np.meshgrid(np.arange(-span, span + 1), np.arange(-span, span + 1), indexing="ij")
    q = (a * m * m + b * m * n + c * n * n)[(m != 0) | (n != 0)]
    return float(np.sum(f(np.sqrt(q))))


def test_lj_potential_shape():
    assert lj_potential(1.0) == -1.0
    r = np.linspace(0.8, 3.0, 200)
    assert np.all(lj_potential(r) >= -1.0)
    with pytest.raises(DomainError):
        lj_potential(0.0)


def test_lj_energy_against_brute_force():
    lat = make_lattice(1.0, 1.15, 1.35)
    # beyond |x| ~ 150 the r^-6 tail contributes below 1e-9
    brute = brute_pair_sum(lat, lambda r: r**-12.0 - 2 * r**-6.0, span=400)
    assert lj_energy(lat) == pytest.approx(brute, rel=1e-8)


def test_reference_energies():
    assert lj_energy(triangular(0.84912)) == pytest.approx(-6.76425, abs=5e-5)
    assert lj_energy(square(1.14)) == pytest.approx(-4.437, abs=1e-3)
    assert lj_energy(triangular(1.14)) == pytest.approx(-4.435, abs=1e-3)


def test_pair_energy_reduces_to_lj():
    spec = PotentialSpec.inverse_power(1, 12, 2, 6)
    for lat in random_lattices(5, seed=21):
        assert pair_energy(lat, spec) == pytest.approx(lj_energy(lat), rel=1e-13)


def test_power_spec_validation():
    with pytest.raises(DomainError):
        PotentialSpec.inverse_power(1, 4, 1, 6)
    with pytest.raises(DomainError):
        PotentialSpec.inverse_power(1, 6, 1, 2)
    with pytest.raises(DomainError):
        PotentialSpec(PotentialKind.LENNARD_JONES, 1.0, 10.0, 2.0, 6.0)


def test_energy_dispatch():
    lat = make_lattice(1.0, 1.1, 1.3)
    assert energy(lat, LENNARD_JONES) == lj_energy(lat)
    assert energy(lat, THOMAS_FERMI) == tf_energy(lat)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.5, 2.0), st.floats(1.0, 2.0), st.floats(math.pi / 3, math.pi / 2))
def test_scaling_law(r, ratio, angle):
    lat = make_lattice(1.0, ratio, angle)
    direct = lj_energy(scale(lat, r))
    assert energy_under_scaling(lat, r) == pytest.approx(direct, rel=1e-11, abs=1e-12)


def test_scaling_profile_optimum():
    prof = ScalingProfile.of(triangular(1.0))
    r = prof.optimal_factor
    assert abs(prof.derivative(r)) < 1e-10
    assert prof(r) <= min(prof(1.01 * r), prof(0.99 * r))
    assert r**2 == pytest.approx(0.84912, abs=5e-5)


def test_tf_energy_against_scipy_sum():
    lat = make_lattice(1.0, 1.2, 1.4)
    brute = brute_pair_sum(lat, lambda r: 0.5 * special.k0(math.sqrt(math.pi) * r), span=30)
    assert tf_energy(lat) == pytest.approx(brute, rel=1e-12)
    assert tf_potential(1.0) == pytest.approx(0.5 * special.k0(math.sqrt(math.pi)))


def test_tf_layer_integral_matches_direct():
    for lat in random_lattices(6, seed=22):
        assert tf_energy_layer(lat) == pytest.approx(tf_energy(lat), rel=1e-8)


def test_tf_triangular_beats_square():
    for area in (0.5, 1.0, 2.0):
        assert tf_energy(triangular(area)) < tf_energy(square(area))
