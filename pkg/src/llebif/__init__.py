"""Stationary-wave bifurcation analysis of the Lugiato-Lefever equation.

Equilibrium structure, spatial-spectrum classification, normal-form
coefficients computed two independent ways, leading-order solution profiles,
and numerical verification of each.
"""

from .errors import (
    AmbiguousClassification,
    DomainError,
    GridTooCoarse,
    NearSingular,
    NoConvergence,
    PersistenceWarning,
    RegimeError,
    SignViolation,
    SingularJacobian,
    WrongClass,
)
from .model import (
    SQRT3,
    CriticalPoints,
    Equilibrium,
    Params,
    RegionTag,
    classify_region,
    critical_points,
    equilibrium_from_rho,
    equilibrium_residual,
    solve_equilibria,
)
from .linearization import (
    REVERSOR,
    BifurcationClass,
    SpatialSystem,
    SpectrumReport,
    bifurcation_curves,
    build_L,
    check_reversibility,
    classify,
    curve_point,
    spatial_spectrum,
)
from .normalform import (
    CorrectionVectors,
    IOmega2Basis,
    IOmega2Coefficients,
    O2Basis,
    O2Coefficients,
    O2IOmegaBasis,
    O2IOmegaCoefficients,
    TaylorForms,
    build_basis,
    coeffs_closed,
    coeffs_numeric,
    hermitian,
    normalize_case,
    solve_phi_iomega2,
    taylor_forms,
)
from .profiles import (
    GridSpec,
    SolutionProfile,
    construct_iomega2,
    construct_o2,
    construct_o2iomega,
    save_profile,
)
from .verify import (
    DEFAULT_FAMILIES,
    RefinedOrbit,
    ResidualEstimate,
    ResidualReport,
    TemporalSpectrum,
    Trajectory,
    family_builder,
    integrate,
    refine_periodic,
    residual_scaling,
    stationary_residual,
    temporal_spectrum_constant,
    truncated_oracle,
)

__version__ = "0.1.0"
