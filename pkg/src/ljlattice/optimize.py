"""Minimization of lattice energies over the fundamental domain.

Two coordinate systems are used for a lattice of fixed area ``A`` (all
lengths below are normalized by ``sqrt(A)``):

* the *length chart* ``(u, v)``, with ``cos(angle) = sqrt(u^2 v^2 - 1) / (u v)``.
  Grids and reports live here.  It folds at ``u v = 1`` (rectangular
  lattices), so the square lattice sits on its edge;
* the *angle chart* ``(u, phi)`` with ``v = 1 / (u sin phi)``, in which every
  energy is smooth across both the square and the triangular point.  Local
  refinement runs here.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np
from scipy.optimize import minimize

from ._grid import grid_axis
from .analysis import (
    CertificateReport,
    GlobalIdentityReport,
    RatioFunction,
    blanc_bound,
    global_identity_check,
    optimal_triangular_area,
    sufficient_condition,
)
from .energy import LENNARD_JONES, PotentialKind, PotentialSpec, ScalingProfile, energy
from .errors import BracketError, ChartDomainError, DomainError, LatticeError
from .lattice import (
    TRIANGULAR_CHART_LENGTH,
    BravaisLattice,
    FixedAreaPoint,
    chart_coordinates,
    from_fixed_area_chart,
    make_lattice,
    scale,
    square,
    triangular,
)
from .sums import DEFAULT_CONTROL, SumControl

__all__ = [
    "Classification",
    "MinimizationReport",
    "LevelSetGrid",
    "GridMargin",
    "CriticalPointResult",
    "CLASSIFICATION_TOL",
    "SEARCH_WINDOW",
    "grid_axis",
    "chart_lattice",
    "angle_chart_lattice",
    "classify",
    "levelset",
    "minimize_fixed_area",
    "minimize_global",
    "scaling_minimize",
    "crossover_area",
    "critical_point_check",
    "hessian_signature",
    "grid_margin",
]

Objective = Union[PotentialSpec, str]

CLASSIFICATION_TOL = 1e-5
# normalized (u, v) window holding both the square and the triangular corner
SEARCH_WINDOW = ((1.0, 1.08), (1.0, 1.08))


class Classification(enum.Enum):
    TRIANGULAR = "triangular"
    SQUARE = "square"
    OTHER = "other"


def chart_lattice(u: float, v: float, area: float) -> BravaisLattice:
    """Lattice of area ``area`` at normalized length-chart point ``(u, v)``."""
    k = math.sqrt(area)
    return from_fixed_area_chart(FixedAreaPoint(u * k, v * k, area))


def angle_chart_lattice(u: float, phi: float, area: float) -> BravaisLattice:
    """Lattice of area ``area`` with normalized ``len_u = u`` and angle ``phi``."""
    if not (u > 0 and 0 < phi < math.pi):
        raise ChartDomainError(f"angle chart point ({u}, {phi}) out of range")
    k = math.sqrt(area)
    v = 1.0 / (u * math.sin(phi))
    return make_lattice(u * k, v * k, phi)


def _chart_valid(u: float, v: float) -> bool:
    return u <= v and u * v >= 1.0 - 1e-12


def classify(lat: BravaisLattice, tol: float = CLASSIFICATION_TOL) -> tuple[Classification, tuple[float, float]]:
    """Shape class of ``lat`` from its normalized chart distance to the corners."""
    x, y = chart_coordinates(lat)
    t = TRIANGULAR_CHART_LENGTH
    if math.hypot(x - t, y - t) <= tol:
        return Classification.TRIANGULAR, (x, y)
    if math.hypot(x - 1.0, y - 1.0) <= tol:
        return Classification.SQUARE, (x, y)
    return Classification.OTHER, (x, y)


def _objective_name(objective: Objective) -> str:
    if isinstance(objective, str):
        return objective
    return objective.kind.value


def _resolve(objective: Objective, area: float, ctl: SumControl) -> Callable[[BravaisLattice], float]:
    if isinstance(objective, PotentialSpec):
        return lambda lat: energy(lat, objective, ctl)
    name = objective.lower()
    if name == "lj":
        return lambda lat: energy(lat, LENNARD_JONES, ctl)
    if name == "tf":
        from .energy import THOMAS_FERMI

        return lambda lat: energy(lat, THOMAS_FERMI, ctl)
    if name == "ratio":
        if not math.isclose(area, 1.0):
            raise DomainError("the ratio objective is defined at unit area only")
        return RatioFunction(ctl).of_lattice
    raise ValueError(f"unknown objective {objective!r}")


# -- level sets ------------------------------------------------------------------


@dataclass(frozen=True)
class LevelSetGrid:
    """Objective values on a regular normalized ``(u, v)`` grid.

    ``values[i, j]`` belongs to ``(u_values[i], v_values[j])`` and is NaN
    wherever ``valid`` is False (outside the chart, or at the singular
    triangular corner of the ratio objective).
    """

    area: float
    objective: str
    u_range: tuple[float, float]
    v_range: tuple[float, float]
    step: float
    u_values: np.ndarray
    v_values: np.ndarray
    values: np.ndarray
    valid: np.ndarray

    def argmin(self) -> tuple[float, float, float]:
        """``(u, v, value)`` of the smallest valid cell, ties broken by ``(u, v)``."""
        best = None
        for i, j in zip(*np.nonzero(self.valid)):
            cand = (self.values[i, j], self.u_values[i], self.v_values[j])
            if best is None or cand < best:
                best = cand
        if best is None:
            raise ChartDomainError("level set has no valid cell")
        val, u, v = best
        return float(u), float(v), float(val)

    def rows(self):
        for i, u in enumerate(self.u_values):
            for j, v in enumerate(self.v_values):
                yield float(u), float(v), float(self.values[i, j]), bool(self.valid[i, j])


def levelset(
    area: float,
    objective: Objective = "lj",
    u_range: tuple[float, float] = SEARCH_WINDOW[0],
    v_range: tuple[float, float] = SEARCH_WINDOW[1],
    step: float = 0.002,
    ctl: SumControl = DEFAULT_CONTROL,
) -> LevelSetGrid:
    """Evaluate the objective at ``E(sqrt(A) L)`` over a chart grid of unit-area ``L``."""
    if not area > 0:
        raise DomainError("area must be positive")
    f = _resolve(objective, area, ctl)
    us = grid_axis(*u_range, step)
    vs = grid_axis(*v_range, step)
    values = np.full((len(us), len(vs)), np.nan)
    valid = np.zeros((len(us), len(vs)), dtype=bool)
    ratio = _objective_name(objective) == "ratio"
    for i, u in enumerate(us):
        for j, v in enumerate(vs):
            if not _chart_valid(u, v):
                continue
            lat = chart_lattice(u, v, area)
            if ratio and RatioFunction.corner_distance(lat) <= f.__self__.exclusion:
                continue
            values[i, j] = f(lat)
            valid[i, j] = True
    return LevelSetGrid(area, _objective_name(objective), tuple(u_range), tuple(v_range), step, us, vs, values, valid)


# -- fixed-area minimization -------------------------------------------------------


@dataclass(frozen=True)
class MinimizationReport:
    argmin: BravaisLattice
    energy: float
    classification: Classification
    grid_best: FixedAreaPoint
    grid_energy: float
    refine_iterations: int
    certificate: CertificateReport | None = None
    objective: str = "lj"
    chart_point: tuple[float, float] = (math.nan, math.nan)
    identity: GlobalIdentityReport | None = None
    notes: dict = field(default_factory=dict)


def _in_window(x: float, y: float, u_range, v_range, slack: float = 1e-7) -> bool:
    return (
        u_range[0] - slack <= x <= u_range[1] + slack
        and v_range[0] - slack <= y <= v_range[1] + slack
    )


def _nelder_mead(fun, x0, simplex):
    return minimize(
        fun,
        np.asarray(x0, dtype=float),
        method="Nelder-Mead",
        options=dict(initial_simplex=np.asarray(simplex, dtype=float), xatol=1e-9, fatol=1e-13, maxiter=4000),
    )


def minimize_fixed_area(
    area: float,
    objective: Objective = LENNARD_JONES,
    ctl: SumControl = DEFAULT_CONTROL,
    step: float = 0.002,
    u_range: tuple[float, float] = SEARCH_WINDOW[0],
    v_range: tuple[float, float] = SEARCH_WINDOW[1],
    starts: int = 5,
) -> MinimizationReport:
    """Minimize the objective among lattices of area ``area``.

    Grid scan of the normalized chart window, then simplex descent in the
    angle chart from the ``starts`` best cells.  Refined points that leave
    the window are discarded, so the answer is the best lattice found whose
    reduced chart point lies in the window.
    """
    if not area > 0:
        raise DomainError("area must be positive")
    f = _resolve(objective, area, ctl)
    grid = levelset(area, objective, u_range, v_range, step, ctl)
    cells = sorted(
        (float(grid.values[i, j]), float(grid.u_values[i]), float(grid.v_values[j]))
        for i, j in zip(*np.nonzero(grid.valid))
    )
    if not cells:
        raise ChartDomainError("search window contains no chart-valid cell")
    g_val, g_u, g_v = cells[0]

    # keep the simplex near the window; other basins belong to other windows
    margin = 10 * step

    def in_angle_chart(z):
        u, phi = z
        if not (u > 0 and 0 < phi < math.pi):
            return math.inf
        try:
            lat = angle_chart_lattice(u, phi, area)
        except LatticeError:
            return math.inf
        if not _in_window(*chart_coordinates(lat), u_range, v_range, slack=margin):
            return math.inf
        return f(lat)

    best = (g_val, g_u, g_v, chart_lattice(g_u, g_v, area))
    iterations = 0
    for val, u, v in cells[:starts]:
        phi = math.asin(min(1.0, 1.0 / (u * v)))
        h = step
        res = _nelder_mead(in_angle_chart, (u, phi), [(u, phi), (u + h, phi), (u, phi - h)])
        iterations += int(res.nit)
        if not np.isfinite(res.fun):
            continue
        lat = angle_chart_lattice(res.x[0], res.x[1], area)
        x, y = chart_coordinates(lat)
        if not _in_window(x, y, u_range, v_range):
            continue
        cand = (float(res.fun), x, y, lat)
        if cand[:3] < best[:3]:
            best = cand
    _, x, y, lat = best
    cls, chart = classify(lat)
    cert = None
    if isinstance(objective, PotentialSpec) and objective.kind is PotentialKind.LENNARD_JONES or objective == "lj":
        cert = sufficient_condition(area)
    return MinimizationReport(
        argmin=lat,
        energy=f(lat),
        classification=cls,
        grid_best=FixedAreaPoint(g_u, g_v, 1.0),
        grid_energy=g_val,
        refine_iterations=iterations,
        certificate=cert,
        objective=_objective_name(objective),
        chart_point=chart,
    )


# -- global minimization -----------------------------------------------------------


def scaling_minimize(lat: BravaisLattice, ctl: SumControl = DEFAULT_CONTROL) -> tuple[float, float]:
    """Optimal dilation ``r* = (zeta_L(12) / zeta_L(6))^(1/6)`` and ``E_LJ(r* L)``."""
    prof = ScalingProfile.of(lat, ctl)
    r = prof.optimal_factor
    return r, prof(r)


def _shape_profile_energy(u: float, phi: float, ctl: SumControl) -> float:
    """``min_r E_LJ(r L) = -zeta_L(6)^2 / zeta_L(12)`` for the unit-area shape ``(u, phi)``."""
    prof = ScalingProfile.of(angle_chart_lattice(u, phi, 1.0), ctl)
    return -prof.zeta6**2 / prof.zeta12


def minimize_global(ctl: SumControl = DEFAULT_CONTROL, starts: int = 5, seeds_per_axis: int = 5) -> MinimizationReport:
    """Minimize ``E_LJ`` over all lattices.

    Seeds come from the box ``[c, 1]^2 x [pi/3, pi/2]`` in
    ``(len_u, len_v, angle)``, with ``c`` the minimal-distance bound of
    :func:`blanc_bound`.  Since ``min_r E_LJ(r L) = -zeta_L(6)^2 / zeta_L(12)``
    in closed form, each seed is refined by simplex descent over the
    two-dimensional shape alone and then dilated optimally.
    """
    bound = blanc_bound(ctl)
    lo = bound.c_bound
    lengths = np.linspace(lo, 1.0, seeds_per_axis)
    angles = np.linspace(math.pi / 3, math.pi / 2, max(2, seeds_per_axis - 1))
    seeds = []
    for lu in lengths:
        for lv in lengths:
            if lv < lu:
                continue
            for ang in angles:
                lat = make_lattice(lu, lv, ang)
                seeds.append((energy(lat, LENNARD_JONES, ctl), float(lu), float(lv), float(ang)))
    seeds.sort()
    grid_e, gu, gv, ga = seeds[0]

    def fun(z):
        u, phi = z
        if not (u > 0 and 0 < phi < math.pi):
            return math.inf
        return _shape_profile_energy(u, phi, ctl)

    best_lat, best_e = make_lattice(gu, gv, ga), grid_e
    iterations = 0
    tried = set()
    for _, lu, lv, ang in seeds[:starts]:
        x, _ = chart_coordinates(make_lattice(lu, lv, ang))
        phi = make_lattice(lu, lv, ang).angle
        key = (round(x, 9), round(phi, 9))
        if key in tried:
            continue
        tried.add(key)
        h = 0.02
        res = _nelder_mead(fun, (x, phi), [(x, phi), (x + h, phi), (x, phi - h)])
        iterations += int(res.nit)
        if not np.isfinite(res.fun):
            continue
        lat = angle_chart_lattice(res.x[0], res.x[1], 1.0)
        r, e = scaling_minimize(lat, ctl)
        if e < best_e:
            best_lat, best_e = scale(lat, r), e
    a0, length0, e0 = optimal_triangular_area(ctl)
    ident = global_identity_check(best_lat, ctl)
    cls, chart = classify(best_lat)
    in_box = lo <= best_lat.len_u and best_lat.len_v <= 1.0
    notes = {
        "search_box": ((lo, 1.0), (lo, 1.0), (math.pi / 3, math.pi / 2)),
        "in_search_box": in_box,
        "min_distance_bound": lo,
        "triangular_reference_energy": e0,
        "distance_to_best_triangular": max(
            abs(best_lat.len_u - length0), abs(best_lat.len_v - length0), abs(best_lat.angle - math.pi / 3)
        ),
        "area": best_lat.area,
        "best_triangular_area": a0,
    }
    return MinimizationReport(
        argmin=best_lat,
        energy=ident.energy,
        classification=cls,
        grid_best=FixedAreaPoint(gu, gv, gu * gv * math.sin(ga)),
        grid_energy=grid_e,
        refine_iterations=iterations,
        certificate=None,
        objective="lj",
        chart_point=chart,
        identity=ident,
        notes=notes,
    )


def crossover_area(
    lo: float = 1.0, hi: float = 1.2, ctl: SumControl = DEFAULT_CONTROL, tol: float = 1e-10
) -> float:
    """Area where the scaled square lattice starts beating the scaled triangular one.

    Bisection of ``E_LJ(sqrt(A) T) - E_LJ(sqrt(A) Z^2)`` over ``[lo, hi]``.
    """
    if not lo < hi:
        raise BracketError("need lo < hi")
    tri = ScalingProfile.of(triangular(1.0), ctl)
    sq = ScalingProfile.of(square(1.0), ctl)

    def diff(a):
        r = math.sqrt(a)
        return tri(r) - sq(r)

    f_lo, f_hi = diff(lo), diff(hi)
    if f_lo == 0:
        return lo
    if f_hi == 0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise BracketError(f"energy difference has the same sign at {lo} and {hi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = diff(mid)
        if f_mid == 0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# -- local analysis ------------------------------------------------------------------


@dataclass(frozen=True)
class CriticalPointResult:
    grad_norm: float
    gradient: tuple[float, float]
    chart: str  # "lengths" or "angle"
    point: tuple[float, float]
    one_sided: bool


def critical_point_check(
    lat: BravaisLattice,
    area: float | None = None,
    ctl: SumControl = DEFAULT_CONTROL,
    step: float = 1e-5,
    chart: str = "auto",
) -> CriticalPointResult:
    """Finite-difference gradient of the fixed-area Lennard-Jones energy.

    ``chart="auto"`` uses the length chart unless the central stencil would
    cross its fold ``u v = 1``, in which case the angle chart is used.
    """
    area = lat.area if area is None else area
    if not math.isclose(lat.area, area, rel_tol=1e-9):
        raise DomainError("lattice area does not match the requested area")
    x, y = chart_coordinates(lat, area)
    h = step
    if chart == "auto":
        chart = "lengths" if (x - h) * (y - h) >= 1.0 else "angle"

    if chart == "lengths":
        p = (x, y)

        def f(a, b):
            return energy(chart_lattice(a, b, area), LENNARD_JONES, ctl)

        def ok(a, b):
            return a > 0 and b > 0 and a * b >= 1.0

    elif chart == "angle":
        p = (x, lat.angle)

        def f(a, b):
            return energy(angle_chart_lattice(a, b, area), LENNARD_JONES, ctl)

        def ok(a, b):
            return a > 0 and 0 < b < math.pi

    else:
        raise ValueError(f"unknown chart {chart!r}")

    grad = []
    one_sided = False
    for k in range(2):
        e = [0.0, 0.0]
        e[k] = h
        plus = (p[0] + e[0], p[1] + e[1])
        minus = (p[0] - e[0], p[1] - e[1])
        if ok(*plus) and ok(*minus):
            grad.append((f(*plus) - f(*minus)) / (2 * h))
        else:
            one_sided = True
            if ok(*plus):
                plus2 = (p[0] + 2 * e[0], p[1] + 2 * e[1])
                grad.append((-3 * f(*p) + 4 * f(*plus) - f(*plus2)) / (2 * h))
            else:
                minus2 = (p[0] - 2 * e[0], p[1] - 2 * e[1])
                grad.append((3 * f(*p) - 4 * f(*minus) + f(*minus2)) / (2 * h))
    return CriticalPointResult(float(math.hypot(*grad)), (grad[0], grad[1]), chart, p, one_sided)


def hessian_signature(
    lat: BravaisLattice, area: float | None = None, ctl: SumControl = DEFAULT_CONTROL, step: float = 1e-4
) -> tuple[float, float]:
    """Eigenvalues of the angle-chart Hessian of the fixed-area LJ energy (report only)."""
    area = lat.area if area is None else area
    x, _ = chart_coordinates(lat, area)
    p = np.array([x, lat.angle])

    def f(z):
        return energy(angle_chart_lattice(z[0], z[1], area), LENNARD_JONES, ctl)

    h = step
    hess = np.zeros((2, 2))
    f0 = f(p)
    for i in range(2):
        ei = np.eye(2)[i] * h
        hess[i, i] = (f(p + ei) - 2 * f0 + f(p - ei)) / h**2
        for j in range(i + 1, 2):
            ej = np.eye(2)[j] * h
            hess[i, j] = hess[j, i] = (
                f(p + ei + ej) - f(p + ei - ej) - f(p - ei + ej) + f(p - ei - ej)
            ) / (4 * h * h)
    lo, hi = np.linalg.eigvalsh(hess)
    return float(lo), float(hi)


@dataclass(frozen=True)
class GridMargin:
    area: float
    objective: str
    reference: float  # objective at the triangular lattice of this area
    min_margin: float  # min over non-triangular cells of value - reference
    argmin_cell: tuple[float, float]
    cells: int
    triangular_cells: int


def grid_margin(
    area: float,
    objective: Objective = "lj",
    n: int = 50,
    u_range: tuple[float, float] = (0.75, TRIANGULAR_CHART_LENGTH),
    v_range: tuple[float, float] = (0.95, 1.45),
    ctl: SumControl = DEFAULT_CONTROL,
) -> GridMargin:
    """How far every lattice on an ``n x n`` chart grid sits above the triangular one."""
    f = _resolve(objective, area, ctl)
    ref = f(triangular(area))
    worst = (math.inf, (math.nan, math.nan))
    cells = tri_cells = 0
    for u in np.linspace(*u_range, n):
        for v in np.linspace(*v_range, n):
            if not _chart_valid(u, v):
                continue
            lat = chart_lattice(u, v, area)
            cells += 1
            if classify(lat)[0] is Classification.TRIANGULAR:
                tri_cells += 1
                continue
            margin = f(lat) - ref
            if margin < worst[0]:
                worst = (margin, (float(u), float(v)))
    return GridMargin(area, _objective_name(objective), ref, worst[0], worst[1], cells, tri_cells)
