"""Reference values with their origin.

``literature`` rows are published values, ``derived`` rows come from an
independent closed form or special-function library.  Bump
``TABLE_VERSION`` whenever a row changes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["TABLE_VERSION", "Reference", "REFERENCES", "reference"]

TABLE_VERSION = "1.0"


@dataclass(frozen=True)
class Reference:
    key: str
    value: float
    tol: float
    origin: str  # "literature" or "derived"
    note: str


# Catalan's constant is the Dirichlet beta value beta(2)
_CATALAN = 0.915965594177219015054603514932384110774
_ZETA2 = math.pi**2 / 6

REFERENCES: dict[str, Reference] = {
    r.key: r
    for r in (
        Reference("a0", 0.84912, 5e-5, "literature", "area of the energy-optimal triangular lattice"),
        Reference("a0_length", 0.99019, 5e-5, "literature", "side length of that lattice"),
        Reference("a0_energy", -6.76425, 5e-5, "literature", "its Lennard-Jones energy"),
        Reference("blanc_p", 0.00988, 1e-5, "literature", "series constant P"),
        Reference("blanc_q", 1.45918, 1e-5, "literature", "series constant Q"),
        Reference("blanc_c", 0.74035, 0.0, "literature", "stated strict lower bound on c"),
        Reference("threshold", 0.63693, 1e-5, "literature", "(pi^3/120)^(1/3)"),
        Reference("ratio_point", 1.014, 0.01, "literature", "chart coordinate of the ratio minimizer"),
        Reference("ratio_value", 1.1378475, 1e-3, "literature", "ratio value at the minimizer"),
        Reference("crossover_lo", 1.13, 0.0, "literature", "triangular still best"),
        Reference("crossover_hi", 1.14, 0.0, "literature", "square already best"),
        Reference("tri_energy_114", -4.435, 1e-3, "literature", "E_LJ of the triangular lattice at area 1.14"),
        Reference("sq_energy_114", -4.437, 1e-3, "literature", "E_LJ of the square lattice at area 1.14"),
        Reference("zeta_z2_4", 4 * _ZETA2 * _CATALAN, 1e-9, "derived", "4 zeta(2) beta(2)"),
        Reference("k0_1", 0.42102443824070833, 1e-9, "derived", "K0(1)"),
    )
}


def reference(key: str) -> Reference:
    return REFERENCES[key]
