"""Per-particle lattice energies built from the lattice sums."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .errors import DomainError
from .lattice import BravaisLattice
from .sums import (
    DEFAULT_CONTROL,
    SumControl,
    _geometry,
    _solve_radius,
    epstein_zeta_direct,
    epstein_zeta_pair,
    gaussian_sum,
    lattice_sum,
)

__all__ = [
    "PotentialKind",
    "PotentialSpec",
    "LENNARD_JONES",
    "THOMAS_FERMI",
    "lj_potential",
    "tf_potential",
    "zeta_values",
    "lj_energy",
    "pair_energy",
    "tf_energy",
    "tf_energy_layer",
    "energy",
    "energy_under_scaling",
    "ScalingProfile",
]

SQRT_PI = math.sqrt(math.pi)


class PotentialKind(enum.Enum):
    LENNARD_JONES = "lj"
    INVERSE_POWER_PAIR = "power"
    THOMAS_FERMI = "tf"


@dataclass(frozen=True)
class PotentialSpec:
    """Radial pair potential.

    For the two inverse-power kinds ``V(r) = k1 / r**n_exp - k2 / r**p_exp``;
    Lennard-Jones is the instance ``(1, 12, 2, 6)``.  Thomas-Fermi ignores the
    numeric fields and uses ``1/2 K0(sqrt(pi) r)``.
    """

    kind: PotentialKind
    k1: float = 1.0
    n_exp: float = 12.0
    k2: float = 2.0
    p_exp: float = 6.0

    def __post_init__(self):
        if self.kind is PotentialKind.INVERSE_POWER_PAIR:
            if not (self.n_exp > self.p_exp > 2):
                raise DomainError(
                    f"need n_exp > p_exp > 2 for a convergent pair energy, got {self.n_exp}, {self.p_exp}"
                )
        if self.kind is PotentialKind.LENNARD_JONES:
            if (self.k1, self.n_exp, self.k2, self.p_exp) != (1.0, 12.0, 2.0, 6.0):
                raise DomainError("Lennard-Jones fixes (k1, n, k2, p) = (1, 12, 2, 6)")

    @classmethod
    def inverse_power(cls, k1, n_exp, k2, p_exp):
        return cls(PotentialKind.INVERSE_POWER_PAIR, float(k1), float(n_exp), float(k2), float(p_exp))

    def __call__(self, r):
        if self.kind is PotentialKind.THOMAS_FERMI:
            return tf_potential(r)
        r = np.asarray(r, dtype=float)
        if np.any(r <= 0):
            raise DomainError("pair potential needs r > 0")
        return self.k1 * r ** (-self.n_exp) - self.k2 * r ** (-self.p_exp)


LENNARD_JONES = PotentialSpec(PotentialKind.LENNARD_JONES)
THOMAS_FERMI = PotentialSpec(PotentialKind.THOMAS_FERMI, 0.0, 0.0, 0.0, 0.0)


def lj_potential(r):
    """``r^-12 - 2 r^-6``; minimum value -1 at ``r = 1``."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("Lennard-Jones potential needs r > 0")
    inv6 = r**-6
    out = inv6 * inv6 - 2 * inv6
    return float(out) if out.ndim == 0 else out


def tf_potential(r):
    """Screened-Coulomb kernel ``1/2 K0(sqrt(pi) r)``."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("Thomas-Fermi kernel needs r > 0")
    out = 0.5 * special.k0(SQRT_PI * r)
    return float(out) if out.ndim == 0 else out


def zeta_values(
    lat: BravaisLattice,
    exponents=(12.0, 6.0),
    ctl: SumControl = DEFAULT_CONTROL,
    method: str = "accelerated",
) -> tuple[float, ...]:
    if method == "accelerated":
        return tuple(float(v) for v in epstein_zeta_pair(lat, tuple(exponents), ctl)[0])
    if method == "direct":
        return tuple(epstein_zeta_direct(lat, s, ctl) for s in exponents)
    raise ValueError(f"unknown zeta method {method!r}")


def lj_energy(lat: BravaisLattice, ctl: SumControl = DEFAULT_CONTROL, method: str = "accelerated") -> float:
    """``E_LJ(L) = zeta_L(12) - 2 zeta_L(6)``."""
    z12, z6 = zeta_values(lat, (12.0, 6.0), ctl, method)
    return z12 - 2.0 * z6


def pair_energy(
    lat: BravaisLattice,
    spec: PotentialSpec,
    ctl: SumControl = DEFAULT_CONTROL,
    method: str = "accelerated",
) -> float:
    """``k1 zeta_L(n) - k2 zeta_L(p)`` for inverse-power potentials."""
    if spec.kind is PotentialKind.THOMAS_FERMI:
        return tf_energy(lat, ctl)
    if not (spec.n_exp > 2 and spec.p_exp > 2):
        raise DomainError("inverse-power exponents must exceed 2")
    zn, zp = zeta_values(lat, (spec.n_exp, spec.p_exp), ctl, method)
    return spec.k1 * zn - spec.k2 * zp


def energy(lat: BravaisLattice, spec: PotentialSpec, ctl: SumControl = DEFAULT_CONTROL) -> float:
    if spec.kind is PotentialKind.LENNARD_JONES:
        return lj_energy(lat, ctl)
    if spec.kind is PotentialKind.THOMAS_FERMI:
        return tf_energy(lat, ctl)
    return pair_energy(lat, spec, ctl)


def tf_energy(lat: BravaisLattice, ctl: SumControl = DEFAULT_CONTROL) -> float:
    """``E_TF(L) = sum_{x != 0} 1/2 K0(sqrt(pi) |x|)`` by direct summation."""
    g = _geometry(lat)
    k = SQRT_PI

    # K0(z) <= sqrt(pi / 2z) e^-z gives a decreasing majorant of the summand
    def tail(radius):
        t = radius - 2 * g.rho
        if t <= 0:
            return math.inf
        pref = 0.5 * math.sqrt(math.pi / (2 * k * t)) * math.exp(-k * t)
        return 2 * math.pi / g.area * pref * ((t + g.rho) / k + 1 / k**2)

    lower = float(special.k0(k * math.sqrt(g.a)))
    radius = _solve_radius(tail, ctl.rel_tol * lower, max(3 * g.rho, math.sqrt(g.c)) * (1 + 1e-9))
    partial = lattice_sum(g, lambda q: 0.5 * special.k0(k * np.sqrt(q)), radius, ctl.max_shell)
    return partial + 0.5 * tail(radius)


def tf_energy_layer(lat: BravaisLattice, ctl: SumControl = DEFAULT_CONTROL) -> float:
    """``E_TF`` through the Gaussian-layer integral.

    ``1/4 int_0^inf E_y(sqrt(pi) L) e^-y dy / y``, where
    ``E_y(sqrt(pi) L) = theta_L(1/(8y)) - 1``.  Independent of any K0 routine.
    """
    a_min = lat.len_u**2
    # E_y(sqrt(pi) L) = gaussian_sum(L, y / pi)
    def integrand(w):
        y = math.exp(w)
        return gaussian_sum(lat, y / math.pi, ctl) * math.exp(-y)

    # below w_lo the Gaussians are < e^-700; above w_hi e^-y wins by > e^-60
    w_lo = math.log(math.pi * a_min / (4 * 700.0))
    w_hi = math.log(80.0 + 8.0 / lat.area)
    w_peak = math.log(max(SQRT_PI * lat.len_u / 2, 1e-300))
    pts = sorted({w_lo, min(max(w_peak, w_lo), w_hi), 0.0 if w_lo < 0 < w_hi else w_lo, w_hi})
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        if hi > lo:
            total += integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=ctl.quad_rel_tol, limit=200)[0]
    return 0.25 * total


@dataclass(frozen=True)
class ScalingProfile:
    """``f(r) = E_LJ(r L) = r^-12 zeta_L(12) - 2 r^-6 zeta_L(6)`` from two constants."""

    zeta12: float
    zeta6: float

    @classmethod
    def of(cls, lat: BravaisLattice, ctl: SumControl = DEFAULT_CONTROL) -> "ScalingProfile":
        z12, z6 = zeta_values(lat, (12.0, 6.0), ctl)
        return cls(z12, z6)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        if np.any(r <= 0):
            raise DomainError("scaling factor must be positive")
        inv6 = r**-6
        out = self.zeta12 * inv6 * inv6 - 2 * self.zeta6 * inv6
        return float(out) if out.ndim == 0 else out

    def derivative(self, r):
        r = np.asarray(r, dtype=float)
        return -12 * self.zeta12 * r**-13 + 12 * self.zeta6 * r**-7

    @property
    def optimal_factor(self) -> float:
        """Dilation ``(zeta12 / zeta6)^(1/6)`` where ``f`` is minimal."""
        return (self.zeta12 / self.zeta6) ** (1 / 6)


def energy_under_scaling(lat: BravaisLattice, r, ctl: SumControl = DEFAULT_CONTROL):
    """Lennard-Jones energy of ``r * lat`` (``r`` may be an array) from cached zetas."""
    return ScalingProfile.of(lat, ctl)(r)
