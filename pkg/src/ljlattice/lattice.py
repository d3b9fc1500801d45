"""Two-dimensional Bravais lattices in rotation-invariant form.

A lattice is stored as the lengths of a reduced basis and the angle between
the two vectors.  Reduced means ``len_u <= len_v`` and an angle in
``[pi/3, pi/2]``, so two lattices that differ by a rotation or reflection
share one representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ChartDomainError, LatticeError

__all__ = [
    "BravaisLattice",
    "QuadraticForm",
    "FixedAreaPoint",
    "make_lattice",
    "reduce_basis",
    "reduce_form",
    "quadratic_form",
    "scale",
    "triangular",
    "square",
    "from_fixed_area_chart",
    "chart_coordinates",
    "TRIANGULAR_CHART_LENGTH",
]

# chart length of the unit-area triangular lattice, sqrt(2/sqrt(3))
TRIANGULAR_CHART_LENGTH = math.sqrt(2.0 / math.sqrt(3.0))

_MAX_REDUCTION_STEPS = 10_000


@dataclass(frozen=True)
class BravaisLattice:
    """Reduced lattice ``Z u + Z v`` described up to rotation.

    Build instances with :func:`make_lattice` rather than directly; the
    constructor only validates, it does not reduce.
    """

    len_u: float
    len_v: float
    angle: float
    area: float

    def __post_init__(self):
        if not (self.len_u > 0 and self.len_v > 0):
            raise LatticeError(f"non-positive basis length: {self.len_u}, {self.len_v}")
        if self.len_u > self.len_v * (1 + 1e-12):
            raise LatticeError("len_u must not exceed len_v")
        if not (math.pi / 3 - 1e-9 <= self.angle <= math.pi / 2 + 1e-9):
            raise LatticeError(f"angle {self.angle} outside [pi/3, pi/2]")
        expected = self.len_u * self.len_v * math.sin(self.angle)
        if not math.isclose(self.area, expected, rel_tol=1e-12):
            raise LatticeError("area inconsistent with lengths and angle")

    @property
    def min_distance(self) -> float:
        """Shortest nonzero vector length."""
        return self.len_u

    def form(self) -> tuple[float, float, float]:
        """Coefficients ``(a, b, c)`` of ``Q(m, n) = a m^2 + b m n + c n^2``."""
        return (
            self.len_u**2,
            2.0 * self.len_u * self.len_v * math.cos(self.angle),
            self.len_v**2,
        )


@dataclass(frozen=True)
class QuadraticForm:
    a: float
    b: float
    c: float
    disc: float

    def __post_init__(self):
        if not (self.a > 0 and self.c > 0 and self.disc > 0):
            raise LatticeError("quadratic form is not positive definite")

    def __call__(self, m, n):
        return self.a * m * m + self.b * m * n + self.c * n * n


@dataclass(frozen=True)
class FixedAreaPoint:
    """Point ``(len_u, len_v)`` of the chart of lattices with a given area.

    The angle is implied: ``len_u * len_v * sin(angle) = target_area``.
    """

    len_u: float
    len_v: float
    target_area: float = 1.0

    def __post_init__(self):
        if not (self.len_u > 0 and self.len_v > 0 and self.target_area > 0):
            raise ChartDomainError("chart coordinates and area must be positive")
        if self.len_u * self.len_v < self.target_area * (1 - 1e-15):
            raise ChartDomainError(
                f"len_u*len_v = {self.len_u * self.len_v} below area {self.target_area}"
            )


def reduce_form(a: float, b: float, c: float) -> tuple[float, float, float]:
    """Lagrange-Gauss reduction of a positive definite binary form.

    Returns an equivalent form with ``0 <= b <= a <= c``.
    """
    if not (a > 0 and c > 0 and 4 * a * c - b * b > 0):
        raise LatticeError(f"form ({a}, {b}, {c}) is not positive definite")
    for _ in range(_MAX_REDUCTION_STEPS):
        if abs(b) > a:
            k = round(b / (2 * a))
            c = c - k * b + k * k * a
            b = b - 2 * k * a
        if a > c:
            a, c = c, a
        elif abs(b) <= a:
            break
    else:
        raise LatticeError("basis reduction did not terminate")
    return a, abs(b), c


def reduce_basis(len_u: float, len_v: float, angle: float) -> BravaisLattice:
    """Reduce the basis with the given lengths and enclosed angle."""
    if not (len_u > 0 and len_v > 0):
        raise LatticeError(f"non-positive basis length: {len_u}, {len_v}")
    s = math.sin(angle)
    if not s > 0 or not math.isfinite(angle):
        raise LatticeError(f"degenerate angle {angle}")
    a, b, c = reduce_form(len_u**2, 2 * len_u * len_v * math.cos(angle), len_v**2)
    lu, lv = math.sqrt(a), math.sqrt(c)
    cos_angle = min(0.5, b / (2 * lu * lv))
    theta = math.acos(cos_angle)
    return BravaisLattice(lu, lv, theta, lu * lv * math.sin(theta))


def make_lattice(len_u: float, len_v: float, angle: float) -> BravaisLattice:
    """Lattice spanned by vectors of lengths ``len_u``, ``len_v`` at ``angle`` radians."""
    if not (0 < angle < math.pi):
        raise LatticeError(f"angle {angle} must lie strictly between 0 and pi")
    return reduce_basis(len_u, len_v, angle)


def quadratic_form(lat: BravaisLattice) -> QuadraticForm:
    a, b, c = lat.form()
    return QuadraticForm(a, b, c, 4.0 * lat.area**2)


def scale(lat: BravaisLattice, r: float) -> BravaisLattice:
    """Dilate ``lat`` by the factor ``r`` (area scales by ``r**2``)."""
    if not r > 0:
        raise LatticeError(f"scale factor must be positive, got {r}")
    lu, lv = r * lat.len_u, r * lat.len_v
    return BravaisLattice(lu, lv, lat.angle, lu * lv * math.sin(lat.angle))


def triangular(area: float = 1.0) -> BravaisLattice:
    """Triangular (hexagonal) lattice with primitive cell of the given area."""
    if not area > 0:
        raise LatticeError(f"area must be positive, got {area}")
    length = math.sqrt(2.0 * area / math.sqrt(3.0))
    angle = math.pi / 3
    return BravaisLattice(length, length, angle, length * length * math.sin(angle))


def square(area: float = 1.0) -> BravaisLattice:
    if not area > 0:
        raise LatticeError(f"area must be positive, got {area}")
    length = math.sqrt(area)
    return BravaisLattice(length, length, math.pi / 2, length * length)


def from_fixed_area_chart(p: FixedAreaPoint) -> BravaisLattice:
    """Lattice of area ``p.target_area`` with basis lengths ``p.len_u``, ``p.len_v``.

    The cosine of the angle is ``sqrt(lu^2 lv^2 - A^2) / (lu lv)``, taken
    nonnegative.  The result is reduced, so chart points outside the
    fundamental domain map to their reduced representative.
    """
    prod = p.len_u * p.len_v
    cos_angle = math.sqrt(max(0.0, prod * prod - p.target_area**2)) / prod
    angle = math.acos(min(1.0, cos_angle))
    if not math.sin(angle) > 0:
        raise ChartDomainError("chart point gives a degenerate lattice")
    return reduce_basis(p.len_u, p.len_v, angle)


def chart_coordinates(lat: BravaisLattice, area: float | None = None) -> tuple[float, float]:
    """Normalized chart coordinates ``(len_u, len_v) / sqrt(area)`` of ``lat``."""
    area = lat.area if area is None else area
    k = math.sqrt(area)
    return lat.len_u / k, lat.len_v / k
