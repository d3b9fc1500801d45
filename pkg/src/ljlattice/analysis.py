"""Certificates and derived constants for Lennard-Jones lattice energies.

The sufficient condition rewrites ``E_LJ`` at fixed area ``A`` as

    E_LJ(L) = C_A + (pi^3 / A^3) int_1^inf (theta_L(a / 2A) - 1) g_A(a) da / a

so that ``g_A >= 0`` on ``[1, inf)`` together with the minimality of the
triangular lattice for every theta function forces triangular optimality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from ._grid import grid_axis
from .energy import ScalingProfile, lj_energy, zeta_values
from .errors import ConfigurationError, DomainError, InvariantViolation, SingularityError
from .lattice import (
    TRIANGULAR_CHART_LENGTH,
    BravaisLattice,
    FixedAreaPoint,
    chart_coordinates,
    from_fixed_area_chart,
    triangular,
)
from .sums import DEFAULT_CONTROL, SumControl, riemann_integral

__all__ = [
    "THRESHOLD_AREA",
    "CertificateReport",
    "BlancBound",
    "GlobalIdentityReport",
    "g_cert",
    "g_cert_derivative",
    "sufficient_condition",
    "RatioFunction",
    "ratio_function",
    "ratio_infimum_scan",
    "RatioScanResult",
    "optimal_triangular_area",
    "blanc_bound",
    "global_identity_check",
    "riemann_constant",
    "riemann_decomposition",
]

THRESHOLD_AREA = (math.pi**3 / 120.0) ** (1.0 / 3.0)


def _certificate_scale(area: float) -> float:
    return math.pi**3 / (area**3 * 120.0)


def g_cert(area: float, alpha):
    """``g_A(alpha) = pi^3/(120 A^3) (alpha^6 + alpha^-5) - (alpha^3 + alpha^-2)``."""
    if not area > 0:
        raise DomainError("area must be positive")
    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha < 1):
        raise DomainError("the certificate is only defined for alpha >= 1")
    k = _certificate_scale(area)
    out = k * (alpha**6 + alpha**-5) - (alpha**3 + alpha**-2)
    return float(out) if out.ndim == 0 else out


def g_cert_derivative(area: float, alpha, order: int = 1):
    """First or second derivative of :func:`g_cert` in ``alpha``."""
    alpha = np.asarray(alpha, dtype=float)
    k = _certificate_scale(area)
    if order == 1:
        out = k * (6 * alpha**5 - 5 * alpha**-6) - (3 * alpha**2 - 2 * alpha**-3)
    elif order == 2:
        out = k * (30 * alpha**4 + 30 * alpha**-7) - (6 * alpha + 6 * alpha**-4)
    else:
        raise ValueError("order must be 1 or 2")
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class CertificateReport:
    area: float
    threshold: float
    sufficient_ok: bool
    g_min_sampled: float
    g_at_one: float
    g_prime_at_one: float
    g_second_min_sampled: float
    details: str


def sufficient_condition(area: float, samples: int = 512) -> CertificateReport:
    """Check ``A <= (pi^3 / 120)^(1/3)`` and sample the certificate on ``[1, 1e3]``.

    The verdict is the exact closed-form comparison. The samples check the
    chain g(1) >= 0, g'(1) >= 0, g'' >= 0 that underlies it.
    """
    if not area > 0:
        raise DomainError("area must be positive")
    grid = np.logspace(0.0, 3.0, samples)
    ok = area <= THRESHOLD_AREA
    g = g_cert(area, grid)
    return CertificateReport(
        area=area,
        threshold=THRESHOLD_AREA,
        sufficient_ok=bool(ok),
        g_min_sampled=float(np.min(g)),
        g_at_one=g_cert(area, 1.0),
        g_prime_at_one=g_cert_derivative(area, 1.0, 1),
        g_second_min_sampled=float(np.min(g_cert_derivative(area, grid, 2))),
        details=f"{samples} log-spaced alpha in [1, 1e3]",
    )


# -- necessary condition -------------------------------------------------------


class RatioFunction:
    """``((z_L(12) - z_T(12)) / (2 (z_L(6) - z_T(6))))^(1/3)`` on unit-area lattices.

    ``T`` is the unit-area triangular lattice; its zeta values are computed
    once per instance.  Points within ``exclusion`` (chart distance) of the
    triangular corner are refused: the quotient is 0/0 there.
    """

    def __init__(self, ctl: SumControl = DEFAULT_CONTROL, exclusion: float = 1e-4):
        self.ctl = ctl
        self.exclusion = exclusion
        self.ref12, self.ref6 = zeta_values(triangular(1.0), (12.0, 6.0), ctl)

    @staticmethod
    def corner_distance(lat: BravaisLattice) -> float:
        x, y = chart_coordinates(lat, 1.0)
        return math.hypot(x - TRIANGULAR_CHART_LENGTH, y - TRIANGULAR_CHART_LENGTH)

    def near_singular(self, lat: BravaisLattice, factor: float = 10.0) -> bool:
        return self.corner_distance(lat) <= factor * self.exclusion

    def of_lattice(self, lat: BravaisLattice) -> float:
        if not math.isclose(lat.area, 1.0, rel_tol=1e-9):
            raise DomainError("ratio function is defined on unit-area lattices")
        dist = self.corner_distance(lat)
        if dist <= self.exclusion:
            raise SingularityError(
                f"chart point at distance {dist:.3g} from the triangular corner (exclusion {self.exclusion})"
            )
        z12, z6 = zeta_values(lat, (12.0, 6.0), self.ctl)
        num = z12 - self.ref12
        den = 2.0 * (z6 - self.ref6)
        if not den > 0:
            raise InvariantViolation(f"zeta_L(6) - zeta_T(6) = {den / 2} is not positive")
        return (num / den) ** (1.0 / 3.0)

    def __call__(self, p: FixedAreaPoint) -> float:
        if not math.isclose(p.target_area, 1.0):
            raise DomainError("ratio function takes unit-area chart points")
        return self.of_lattice(from_fixed_area_chart(p))


def ratio_function(p: FixedAreaPoint, ctl: SumControl = DEFAULT_CONTROL, exclusion: float = 1e-4) -> float:
    return RatioFunction(ctl, exclusion)(p)


@dataclass(frozen=True)
class RatioScanResult:
    point: FixedAreaPoint
    value: float
    grid_point: FixedAreaPoint
    grid_value: float
    cells_evaluated: int
    near_singular: bool = False
    warnings: tuple[str, ...] = field(default_factory=tuple)


def ratio_infimum_scan(
    grid_step: float = 0.002,
    exclusion: float = 1e-4,
    ctl: SumControl = DEFAULT_CONTROL,
    u_range: tuple[float, float] = (1.0, 1.08),
    v_range: tuple[float, float] = (1.0, 1.08),
) -> RatioScanResult:
    """Grid minimum of the ratio function, refined by simplex descent.

    The grid covers chart-valid cells (``u <= v``, ``u v >= 1``) outside the
    exclusion ball.  Ties go to the lexicographically smallest ``(u, v)``.
    The result is the smallest value seen, which need not be the infimum.
    """
    if not grid_step > 0:
        raise DomainError("grid_step must be positive")
    f = RatioFunction(ctl, exclusion)
    us, vs = grid_axis(*u_range, grid_step), grid_axis(*v_range, grid_step)
    best = None
    count = 0
    for u in us:
        for v in vs:
            if u > v or u * v < 1.0:
                continue
            lat = from_fixed_area_chart(FixedAreaPoint(u, v, 1.0))
            if f.corner_distance(lat) <= exclusion:
                continue
            val = f.of_lattice(lat)
            count += 1
            if best is None or val < best[0]:
                best = (val, u, v)
    if best is None:
        raise ConfigurationError("no chart-valid grid cell outside the exclusion ball")
    grid_val, gu, gv = best

    def objective(z):
        u, v = z
        if u <= 0 or v <= 0 or u * v < 1.0:
            return math.inf
        lat = from_fixed_area_chart(FixedAreaPoint(u, v, 1.0))
        if f.corner_distance(lat) <= exclusion:
            return math.inf
        return f.of_lattice(lat)

    h = grid_step / 2
    simplex = np.array([[gu, gv], [gu + h, gv], [gu, gv + h]])
    res = minimize(
        objective,
        np.array([gu, gv]),
        method="Nelder-Mead",
        options=dict(initial_simplex=simplex, xatol=1e-9, fatol=1e-13, maxiter=4000),
    )
    if res.fun < grid_val:
        u, v = sorted(float(c) for c in res.x)
        value = float(res.fun)
    else:
        u, v, value = gu, gv, grid_val
    lat = from_fixed_area_chart(FixedAreaPoint(u, v, 1.0))
    near = f.near_singular(lat)
    notes = ("minimizer close to the triangular corner; value may be ill-conditioned",) if near else ()
    return RatioScanResult(
        point=FixedAreaPoint(u, v, 1.0),
        value=value,
        grid_point=FixedAreaPoint(gu, gv, 1.0),
        grid_value=grid_val,
        cells_evaluated=count,
        near_singular=near,
        warnings=notes,
    )


# -- global problem ------------------------------------------------------------


def optimal_triangular_area(ctl: SumControl = DEFAULT_CONTROL) -> tuple[float, float, float]:
    """``(A0, length, E_LJ)`` of the best triangular lattice.

    ``A0 = (zeta_T(12) / zeta_T(6))^(1/3)`` for the unit-area triangular ``T``.
    """
    z12, z6 = zeta_values(triangular(1.0), (12.0, 6.0), ctl)
    a0 = (z12 / z6) ** (1.0 / 3.0)
    length = math.sqrt(2.0 * a0 / math.sqrt(3.0))
    return a0, length, ScalingProfile(z12, z6)(math.sqrt(a0))


def _blanc_c(p: float, q: float, zeta_ref: float) -> float:
    root = math.sqrt((q + 2) ** 2 + 4 * (23 - zeta_ref) * (p + 1))
    return (2 * (p + 1) / (q + 2 + root)) ** (1 / 6)


@dataclass(frozen=True)
class BlancBound:
    """Lower bound ``c_bound`` on the shortest vector of a global minimizer."""

    p_const: float
    q_const: float
    zeta_ref: float
    c_bound: float

    def recompute(self) -> float:
        return _blanc_c(self.p_const, self.q_const, self.zeta_ref)

    @property
    def area_lower_bound(self) -> float:
        """Smallest area compatible with ``min distance >= c_bound`` (triangular packing)."""
        return math.sqrt(3) / 2 * self.c_bound**2


def _series(num_coeffs, power: int, tol: float) -> float:
    """``sum_{k>=2} (c1 k + c0) / k^power`` truncated once the integral tail is below ``tol``."""
    c1, c0 = num_coeffs
    kmax = 2
    while c1 / ((power - 2) * kmax ** (power - 2)) + c0 / ((power - 1) * kmax ** (power - 1)) > tol:
        kmax *= 2
    k = np.arange(2, kmax + 1, dtype=float)
    terms = (c1 * k + c0) / k**power
    return float(np.sum(terms[::-1]))


def blanc_bound(ctl: SumControl = DEFAULT_CONTROL) -> BlancBound:
    """Series constants ``P``, ``Q`` and the closed-form distance bound ``c``.

    ``P = sum_{k>=2} (16k+8)/k^12`` and ``Q = sum_{k>=2} (32k+16)/k^6``;
    ``c`` solves the quadratic in ``t = |u|^-6`` with ``zeta_ref`` the
    ``s = 6`` zeta value of the best triangular lattice.
    """
    p = _series((16.0, 8.0), 12, 1e-14)
    q = _series((32.0, 16.0), 6, 1e-14)
    a0, _, _ = optimal_triangular_area(ctl)
    zeta_ref = zeta_values(triangular(a0), (6.0,), ctl)[0]
    return BlancBound(p, q, zeta_ref, _blanc_c(p, q, zeta_ref))


@dataclass(frozen=True)
class GlobalIdentityReport:
    zeta_gap: float  # |z12 - z6| / z6
    len_u_below_one: bool
    len_v_at_most_one: bool
    energy_residual: float  # E_LJ + z6
    zeta12: float
    zeta6: float
    energy: float

    @property
    def lengths_ok(self) -> bool:
        return self.len_u_below_one and self.len_v_at_most_one


def global_identity_check(lat: BravaisLattice, ctl: SumControl = DEFAULT_CONTROL) -> GlobalIdentityReport:
    """Necessary conditions satisfied by any global minimizer of ``E_LJ``."""
    z12, z6 = zeta_values(lat, (12.0, 6.0), ctl)
    e = z12 - 2 * z6
    return GlobalIdentityReport(
        zeta_gap=abs(z12 - z6) / z6,
        len_u_below_one=lat.len_u < 1.0,
        len_v_at_most_one=lat.len_v <= 1.0,
        energy_residual=e + z6,
        zeta12=z12,
        zeta6=z6,
        energy=e,
    )


def riemann_constant(area: float) -> float:
    """``C_A = pi^6 / (3600 A^6) - pi^3 / (6 A^3)``."""
    if not area > 0:
        raise DomainError("area must be positive")
    return math.pi**6 / (3600 * area**6) - math.pi**3 / (6 * area**3)


def riemann_decomposition(lat: BravaisLattice, ctl: SumControl = DEFAULT_CONTROL) -> float:
    """``C_A + (pi^3/A^3) int_1^inf (theta_L(a/2A) - 1) g_A(a) da/a`` by quadrature."""
    area = lat.area
    k = math.pi**3 / area**3
    integral = riemann_integral(lat, lambda a: g_cert(area, a), ctl)
    return riemann_constant(area) + k * integral


def check_energy_decomposition(lat: BravaisLattice, ctl: SumControl = DEFAULT_CONTROL) -> float:
    """Absolute residual between ``E_LJ`` and its theta-integral decomposition."""
    return abs(lj_energy(lat, ctl) - riemann_decomposition(lat, ctl))
