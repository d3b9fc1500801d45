"""Lattice theta and Epstein zeta sums, Gaussian layers and the Bessel K0.

Every lattice sum is truncated to the vectors inside a disc of radius ``R``.
The discarded part is bracketed by comparing each remaining lattice point
with its Voronoi cell. Each cell has area ``|L|`` and fits in a ball whose
radius ``rho`` is the covering radius. For a decreasing radial summand
``f`` this gives

    (2 pi / |L|) int_{R+2rho}^inf f(t) (t - rho) dt
        <= tail <=
    (2 pi / |L|) int_{R-2rho}^inf f(t) (t + rho) dt

The returned value adds the midpoint of that bracket, and the error bound
is half its width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np
from scipy import integrate, special

from .errors import ConvergenceError, DomainError, LatticeError
from .lattice import BravaisLattice, reduce_form

__all__ = [
    "SumControl",
    "NormalizedForm",
    "DEFAULT_CONTROL",
    "normalized_form",
    "theta",
    "theta_normalized",
    "theta_with_error",
    "epstein_zeta_direct",
    "epstein_zeta_direct_with_error",
    "epstein_zeta_accelerated",
    "epstein_zeta_accelerated_with_error",
    "epstein_zeta_pair",
    "riemann_integral",
    "gaussian_sum",
    "bessel_k0",
    "bessel_k0_laplace",
    "lattice_sum",
]

_CHUNK = 2_000_000


@dataclass(frozen=True)
class SumControl:
    """Tolerances and caps shared by all infinite sums and quadratures."""

    rel_tol: float = 1e-12
    max_shell: int = 10_000
    quad_rel_tol: float = 1e-12

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.quad_rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_shell < 1:
            raise ValueError("max_shell must be a positive integer")

    def tightened(self, factor: float = 0.5) -> "SumControl":
        return SumControl(self.rel_tol * factor, self.max_shell, self.quad_rel_tol * factor)


DEFAULT_CONTROL = SumControl()


@dataclass(frozen=True)
class NormalizedForm:
    """Binary quadratic form ``a m^2 + b m n + c n^2`` of discriminant one."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        disc = 4 * self.a * self.c - self.b * self.b
        if not (self.a > 0 and self.c > 0) or abs(disc - 1.0) > 1e-12:
            raise LatticeError(f"form must be positive definite with discriminant 1, got {disc}")


def normalized_form(lat: BravaisLattice) -> NormalizedForm:
    """The form ``Q_L / (2|L|)``, which has discriminant one."""
    a, b, c = lat.form()
    k = 2.0 * lat.area
    a, b, c = a / k, b / k, c / k
    # absorb rounding so the discriminant is 1 to working precision
    fix = math.sqrt((4 * a * c - b * b))
    return NormalizedForm(a / fix, b / fix, c / fix)


# -- lattice point enumeration -------------------------------------------------


@dataclass(frozen=True)
class _Geometry:
    a: float
    b: float
    c: float
    disc: float
    area: float
    rho: float  # covering radius

    @classmethod
    def of(cls, a: float, b: float, c: float) -> "_Geometry":
        a, b, c = reduce_form(a, b, c)
        disc = 4 * a * c - b * b
        area = 0.5 * math.sqrt(disc)
        # circumradius of the non-obtuse triangle spanned by u, v
        rho = math.sqrt(a * c * (a + c - b)) / (2 * area)
        return cls(a, b, c, disc, area, rho)


def _geometry(lat: BravaisLattice) -> _Geometry:
    return _Geometry.of(*lat.form())


def _half_plane_norms(g: _Geometry, radius: float, max_shell: int) -> Iterator[np.ndarray]:
    """Yield ``Q(m, n)`` for one of each pair ``+-(m, n)`` with ``0 < Q <= radius^2``."""
    r2 = radius * radius
    a, b, c, disc = g.a, g.b, g.c, g.disc
    n_max = int(math.floor(radius * math.sqrt(4 * a / disc)))
    m_span = radius * math.sqrt(4 * c / disc)
    if max(n_max, m_span) > max_shell:
        raise ConvergenceError(
            f"cutoff radius {radius:.6g} needs index range {max(n_max, m_span):.6g} > max_shell {max_shell}"
        )
    ns = np.arange(0, n_max + 1, dtype=np.int64)
    center = -b * ns / (2 * a)
    half = np.sqrt(np.maximum(0.0, r2 - disc * ns.astype(float) ** 2 / (4 * a)) / a)
    half = half * (1 + 1e-12) + 1e-12
    lo = np.ceil(center - half).astype(np.int64)
    hi = np.floor(center + half).astype(np.int64)
    lo[0] = 1
    counts = np.maximum(hi - lo + 1, 0)

    start = 0
    while start < len(ns):
        stop = start
        total = 0
        while stop < len(ns) and (total == 0 or total + counts[stop] <= _CHUNK):
            total += counts[stop]
            stop += 1
        cnt = counts[start:stop]
        if total:
            n = np.repeat(ns[start:stop], cnt).astype(float)
            offsets = np.repeat(np.cumsum(cnt) - cnt, cnt)
            m = (np.repeat(lo[start:stop], cnt) + (np.arange(total) - offsets)).astype(float)
            q = a * m * m + b * m * n + c * n * n
            q = q[(q <= r2) & (q > 0)]
            if q.size:
                yield q
        start = stop


def _solve_radius(error_at: Callable[[float], float], target: float, r_start: float) -> float:
    """Smallest radius (on a geometric ladder) whose error bound meets ``target``."""
    r = r_start
    for _ in range(2000):
        if error_at(r) <= target:
            return r
        r *= 1.05
    raise ConvergenceError("could not find a cutoff radius", error_at(r))


def lattice_sum(
    g: _Geometry,
    summand: Callable[[np.ndarray], np.ndarray],
    radius: float,
    max_shell: int,
) -> float:
    """``sum_{0 < Q <= radius^2} summand(Q)`` over the full lattice."""
    total = 0.0
    for q in _half_plane_norms(g, radius, max_shell):
        total += float(np.sum(summand(q)))
    return 2.0 * total


# -- theta ---------------------------------------------------------------------


def _gauss_moment(beta: float, t: float, rho: float, sign: int) -> float:
    """``int_t^inf exp(-beta x^2) (x + sign*rho) dx`` for ``t >= 0``."""
    sb = math.sqrt(beta)
    return math.exp(-beta * t * t) / (2 * beta) + sign * rho * math.sqrt(math.pi) / (2 * sb) * special.erfc(sb * t)


def _gauss_log_upper(beta: float, t: float, rho: float, area: float) -> float:
    sb = math.sqrt(beta)
    inner = 1 / (2 * beta) + rho * math.sqrt(math.pi) / (2 * sb) * special.erfcx(sb * t)
    return math.log(2 * math.pi / area) - beta * t * t + math.log(inner)


def _theta_minus_one(g: _Geometry, beta: float, ctl: SumControl) -> tuple[float, float]:
    """``sum_{x != 0} exp(-beta |x|^2)`` with its truncation error bound."""
    if not beta > 0:
        raise DomainError("theta parameter must be positive")
    # lower bound of the sum from the two shortest vectors, kept in logs
    log_target = math.log(ctl.rel_tol) + math.log(2.0) - beta * g.a
    t = 0.0
    for _ in range(50):
        prefactor = _gauss_log_upper(beta, t, g.rho, g.area) + beta * t * t
        t_new = math.sqrt(max(0.0, prefactor - log_target) / beta)
        if abs(t_new - t) <= 1e-12 * max(1.0, t):
            t = t_new
            break
        t = t_new
    radius = max(t + 2 * g.rho, math.sqrt(g.c) * (1 + 1e-9))
    partial = lattice_sum(g, lambda q: np.exp(-beta * q), radius, ctl.max_shell)
    t_up = max(radius - 2 * g.rho, 0.0)
    upper = 2 * math.pi / g.area * _gauss_moment(beta, t_up, g.rho, +1)
    lower = max(0.0, 2 * math.pi / g.area * _gauss_moment(beta, radius + 2 * g.rho, g.rho, -1))
    return float(partial + 0.5 * (upper + lower)), float(0.5 * (upper - lower))


def theta_with_error(lat: BravaisLattice, alpha: float, ctl: SumControl = DEFAULT_CONTROL) -> tuple[float, float]:
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    value, err = _theta_minus_one(_geometry(lat), 2 * math.pi * alpha, ctl)
    return 1.0 + value, err


def theta(lat: BravaisLattice, alpha: float, ctl: SumControl = DEFAULT_CONTROL) -> float:
    """``theta_L(alpha) = sum over (m, n) of exp(-2 pi alpha Q_L(m, n))``."""
    return theta_with_error(lat, alpha, ctl)[0]


def theta_normalized(form: NormalizedForm, alpha: float, ctl: SumControl = DEFAULT_CONTROL) -> float:
    """Theta series of a discriminant-one form; satisfies ``theta(1/a) = a theta(a)``."""
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    g = _Geometry.of(form.a, form.b, form.c)
    return 1.0 + _theta_minus_one(g, 2 * math.pi * alpha, ctl)[0]


def gaussian_sum(lat: BravaisLattice, y: float, ctl: SumControl = DEFAULT_CONTROL) -> float:
    """``E_y(L) = sum_{x != 0} exp(-|x|^2 / (4y))``, i.e. ``theta_L(1/(8 pi y)) - 1``."""
    if not y > 0:
        raise DomainError(f"y must be positive, got {y}")
    alpha = 1.0 / (8 * math.pi * y)
    return _theta_minus_one(_geometry(lat), 2 * math.pi * alpha, ctl)[0]


# -- Epstein zeta, direct ------------------------------------------------------


def _power_moment(s: float, t: float, rho: float, sign: int) -> float:
    """``int_t^inf x^-s (x + sign*rho) dx``."""
    return t ** (2 - s) / (s - 2) + sign * rho * t ** (1 - s) / (s - 1)


def epstein_zeta_direct_with_error(
    lat: BravaisLattice, s: float, ctl: SumControl = DEFAULT_CONTROL
) -> tuple[float, float]:
    if not s > 2:
        raise DomainError(f"Epstein zeta diverges for s <= 2 (got {s})")
    g = _geometry(lat)
    k = 2 * math.pi / g.area

    def bracket(radius):
        up = k * _power_moment(s, radius - 2 * g.rho, g.rho, +1)
        lo = k * _power_moment(s, radius + 2 * g.rho, g.rho, -1)
        return up, lo

    def err(radius):
        up, lo = bracket(radius)
        return 0.5 * (up - lo)

    zeta_lower = 2 * g.a ** (-s / 2)
    r0 = max(4 * g.rho, math.sqrt(g.c)) * (1 + 1e-9)
    # jump close to the answer using the leading-order error ~ 3 k rho R^(1-s)
    guess = (3 * k * g.rho / (ctl.rel_tol * zeta_lower)) ** (1 / (s - 1))
    r_max = ctl.max_shell * math.sqrt(g.disc / (4 * g.c))
    radius = _solve_radius(err, ctl.rel_tol * zeta_lower, max(r0, min(0.9 * guess, r_max)))
    if radius > r_max:
        raise ConvergenceError(
            f"direct zeta at s={s} needs radius {radius:.4g} beyond max_shell", err(r_max) / zeta_lower
        )
    half_s = s / 2
    partial = lattice_sum(g, lambda q: q ** (-half_s), radius, ctl.max_shell)
    up, lo = bracket(radius)
    return partial + 0.5 * (up + lo), 0.5 * (up - lo)


def epstein_zeta_direct(lat: BravaisLattice, s: float, ctl: SumControl = DEFAULT_CONTROL) -> float:
    """``zeta_L(s) = sum_{x != 0} |x|^-s`` by truncated direct summation."""
    return epstein_zeta_direct_with_error(lat, s, ctl)[0]


# -- Epstein zeta, theta-integral acceleration --------------------------------


def _expint_general(order: float, z: np.ndarray) -> np.ndarray:
    """Generalized exponential integral ``E_order(z) = int_1^inf e^{-zt} t^-order dt``."""
    if float(order).is_integer():
        return special.expn(int(order), z)
    import mpmath

    f = np.frompyfunc(lambda x: float(mpmath.expint(order, x)), 1, 1)
    return f(z).astype(float)


def _riemann_terms(half_s: float, z: np.ndarray) -> np.ndarray:
    """Closed-form ``int_1^inf e^{-z a} (a^h + a^{1-h}) da / a`` per lattice vector."""
    upper = special.gamma(half_s) * special.gammaincc(half_s, z) * z ** (-half_s)
    return upper + _expint_general(half_s, z)


def epstein_zeta_pair(
    lat: BravaisLattice, exponents: tuple[float, ...], ctl: SumControl = DEFAULT_CONTROL
) -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Accelerated ``zeta_L(s)`` for several ``s`` sharing one enumeration.

    Uses, for the discriminant-one form ``Q`` of ``L`` and ``h = s/2``,

        zeta_Q(2h) Gamma(h) (2 pi)^-h = 1/(h-1) - 1/h
            + int_1^inf (theta_Q(a) - 1)(a^h + a^{1-h}) da / a

    with the integral done term by term through incomplete gamma functions.
    Returns ``(values, error_bounds)``.
    """
    for s in exponents:
        if not s > 2:
            raise DomainError(f"Epstein zeta diverges for s <= 2 (got {s})")
    nf = normalized_form(lat)
    g = _Geometry.of(nf.a, nf.b, nf.c)
    halves = [s / 2 for s in exponents]
    h_max = max(halves)
    beta = 2 * math.pi

    consts = []
    lowers = []
    for h in halves:
        const = 1 / (h - 1) - 1 / h
        consts.append(const)
        lowers.append(const)

    # each term is bounded by 2 e^{-z} / (z - h + 1) once z = 2 pi t^2 > h
    def err_at(radius):
        t = radius - 2 * g.rho
        z = beta * t * t
        if t <= 0 or z <= h_max + 1:
            return math.inf
        return 2 * math.pi / g.area * 2 / (z - h_max + 1) * _gauss_moment(beta, t, g.rho, +1)

    target = ctl.rel_tol * min(lowers) * 1e-2
    r0 = max(2 * g.rho + math.sqrt((h_max + 2) / beta), math.sqrt(g.c)) * (1 + 1e-9)
    radius = _solve_radius(err_at, target, r0)
    totals = [0.0] * len(halves)
    for q in _half_plane_norms(g, radius, ctl.max_shell):
        z = beta * q
        for i, h in enumerate(halves):
            totals[i] += float(np.sum(_riemann_terms(h, z)))
    tail = err_at(radius)

    values, errors = [], []
    area_factor = 2.0 * lat.area
    for h, const, tot in zip(halves, consts, totals):
        pref = (2 * math.pi) ** h / special.gamma(h) / area_factor**h
        values.append(float(pref * (const + 2.0 * tot + 0.5 * tail)))
        errors.append(float(pref * 0.5 * tail))
    return tuple(values), tuple(errors)


def epstein_zeta_accelerated_with_error(
    lat: BravaisLattice, s: float, ctl: SumControl = DEFAULT_CONTROL
) -> tuple[float, float]:
    (v,), (e,) = epstein_zeta_pair(lat, (s,), ctl)
    return v, e


def epstein_zeta_accelerated(lat: BravaisLattice, s: float, ctl: SumControl = DEFAULT_CONTROL) -> float:
    """``zeta_L(s)`` through the theta-function integral identity (exponential convergence)."""
    return epstein_zeta_pair(lat, (s,), ctl)[0][0]


def riemann_integral(
    lat: BravaisLattice,
    weight: Callable[[float], float],
    ctl: SumControl = DEFAULT_CONTROL,
) -> float:
    """``int_1^inf (theta_L(a/(2|L|)) - 1) weight(a) da / a`` by adaptive quadrature.

    The theta factor is summed directly at every node, so this is the
    quadrature counterpart of the closed-form terms in
    :func:`epstein_zeta_pair`.  ``weight`` must grow at most polynomially.
    """
    nf = normalized_form(lat)
    g = _Geometry.of(nf.a, nf.b, nf.c)
    tctl = SumControl(min(ctl.rel_tol, 1e-13), ctl.max_shell, ctl.quad_rel_tol)

    def integrand(alpha):
        return _theta_minus_one(g, 2 * math.pi * alpha, tctl)[0] * weight(alpha) / alpha

    # theta - 1 <= C e^{-2 pi a_min alpha}; stop once that kills any polynomial weight
    rate = 2 * math.pi * g.a
    upper = 1.0 + 80.0 / rate
    while integrand(upper) != 0.0 and abs(integrand(upper)) > 1e-40:
        upper += 20.0 / rate
    pieces = np.linspace(1.0, upper, 9)
    total = 0.0
    for lo, hi in zip(pieces[:-1], pieces[1:]):
        val, _ = integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=ctl.quad_rel_tol, limit=200)
        total += val
    return total


# -- Bessel K0 -----------------------------------------------------------------


def _check_k0_arg(x: float) -> None:
    if not x > 0:
        raise DomainError(f"K0 is only defined for x > 0 (got {x})")


def bessel_k0(x: float, ctl: SumControl = DEFAULT_CONTROL) -> float:
    """Modified Bessel function ``K0(x) = int_0^inf exp(-x cosh t) dt``."""
    _check_k0_arg(x)
    # scaled integrand exp(-x (cosh t - 1)) <= e^-60 beyond t_max
    t_max = math.acosh(1 + 60.0 / x)
    t_peak = math.acosh(1 + 1.0 / x)
    pts = sorted({0.0, min(t_peak, t_max), t_max})
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        if hi <= lo:
            continue
        val, _ = integrate.quad(
            lambda t: math.exp(-x * (math.cosh(t) - 1.0)),
            lo,
            hi,
            epsabs=0.0,
            epsrel=ctl.quad_rel_tol,
            limit=200,
        )
        total += val
    return total * math.exp(-x)


def bessel_k0_laplace(x: float, ctl: SumControl = DEFAULT_CONTROL) -> float:
    """``K0(x) = 1/2 int_0^inf exp(-x^2/(4y)) exp(-y) dy / y``.

    The integrand peaks at ``y = x/2``.  Below the peak the variable is
    changed to ``w = log(x / (2y))``; above it the integral is taken in ``y``.
    """
    _check_k0_arg(x)
    half = x / 2

    def below(w):
        y = half * math.exp(-w)
        return math.exp(x - x * x / (4 * y) - y)

    def above(y):
        return math.exp(x - x * x / (4 * y) - y) / y

    opts = dict(epsabs=0.0, epsrel=ctl.quad_rel_tol, limit=200)
    # below the peak the exponent drops like -x sinh-ish; e^-60 cutoff
    w_max = math.acosh(1 + 60.0 / x)
    w_mid = min(math.acosh(1 + 1.0 / x), w_max)
    low = integrate.quad(below, 0.0, w_mid, **opts)[0] + integrate.quad(below, w_mid, w_max, **opts)[0]
    edges = [half, half + 1.0, half + 10.0, half + 80.0]
    if half < 1.0:
        edges = [half, min(1.0, 4 * half), 1.0] + edges[1:]
        edges = sorted(set(edges))
    high = sum(integrate.quad(above, lo, hi, **opts)[0] for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo)
    return 0.5 * (low + high) * math.exp(-x)
