"""Orbital angular momentum transfer in double-tripod spinor slow light."""

from .analysis import (
    ConstraintReport,
    OamSpectrum,
    ScanRecord,
    azimuthal_map,
    degeneracy_margin,
    diffraction_number,
    find_peak,
    lifetime_report,
    oam_spectrum,
    radial_scan,
    solve_xi_condition,
    winding_number,
)
from .errors import (
    DegenerateVelocity,
    DomainError,
    NoSolution,
    SingularElimination,
    SingularRabi,
    UnsupportedDetuning,
)
from .medium import (
    MediumParams,
    Regime,
    VelocityDecomposition,
    classify_regime,
    detuning_matrix,
    eigen_velocities,
    from_physical,
    lg_ratio,
    rabi_matrix,
    total_rabi,
    velocity_matrix,
)
from .oracle import analytic_generator, exact_generator, exact_transmissions, expm2, ode_propagate
from .transfer import (
    KCoefficients,
    TransferResult,
    dispersion,
    k_coefficients,
    t2_small_rho,
    transfer_matrix,
    transmissions,
)

__version__ = "0.1.0"
