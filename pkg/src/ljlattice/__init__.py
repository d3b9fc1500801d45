"""Lennard-Jones and Thomas-Fermi energies of two-dimensional Bravais lattices."""

from .analysis import (
    THRESHOLD_AREA,
    BlancBound,
    CertificateReport,
    GlobalIdentityReport,
    RatioFunction,
    blanc_bound,
    g_cert,
    global_identity_check,
    optimal_triangular_area,
    ratio_function,
    ratio_infimum_scan,
    riemann_constant,
    sufficient_condition,
)
from .energy import (
    LENNARD_JONES,
    THOMAS_FERMI,
    PotentialKind,
    PotentialSpec,
    energy_under_scaling,
    lj_energy,
    lj_potential,
    pair_energy,
    tf_energy,
)
from .lattice import (
    BravaisLattice,
    FixedAreaPoint,
    QuadraticForm,
    from_fixed_area_chart,
    make_lattice,
    quadratic_form,
    reduce_basis,
    scale,
    square,
    triangular,
)
from .optimize import (
    Classification,
    LevelSetGrid,
    MinimizationReport,
    critical_point_check,
    crossover_area,
    levelset,
    minimize_fixed_area,
    minimize_global,
    scaling_minimize,
)
from .sums import (
    DEFAULT_CONTROL,
    NormalizedForm,
    SumControl,
    bessel_k0,
    bessel_k0_laplace,
    epstein_zeta_accelerated,
    epstein_zeta_direct,
    gaussian_sum,
    normalized_form,
    theta,
    theta_normalized,
)

__version__ = "0.1.0"
