"""High accuracy elliptic special functions and the identities built on them.

The package evaluates Jacobi elliptic functions for real and complex
argument, Jacobi theta functions with rigorous truncation, the residue and
Fourier series attached to the sn/cd ratio, a double-exponential quadrature
for the associated weight function, and the one-parameter family of
perturbed weights that shares its moments.  ``mystint.cli`` exposes the
verification harness; everything below is the library surface.
"""

from .elliptic import (
    JacobiTriple,
    ModulusData,
    agm,
    complete_K,
    jacobi_complex,
    jacobi_real,
    modulus_data,
    sn_over_cd,
)
from .errors import (
    AccuracyError,
    ConfigError,
    ConvergenceError,
    DomainError,
    PoleProximityError,
)
from .nevanlinna import (
    B_of_x,
    CanonicalParams,
    D_of_x,
    MomentInvarianceReport,
    WeightParams,
    canonical_params,
    lhs_theorem2,
    moment_invariance_report,
    weight_w,
)
from .quadrature import (
    QuadratureConfig,
    integrate_weighted,
    lhs_theorem1,
    moment_quadrature,
    mystery_weight,
)
from .series import (
    PowerSeries,
    fourier_check_sn_dn,
    moments_from_taylor,
    residue_series_I,
    taylor_sn_cn_dn,
    taylor_sn_over_cd,
)
from .theta import (
    MIN_LATTICE_IM,
    ThetaChainParams,
    ThetaValue,
    chain_check,
    chain_expression,
    chain_params,
    jacobi_via_theta,
    theta,
    transform_half,
    transform_inversion,
    transform_shift,
)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "B_of_x",
    "CanonicalParams",
    "ConfigError",
    "ConvergenceError",
    "D_of_x",
    "DomainError",
    "JacobiTriple",
    "MIN_LATTICE_IM",
    "ModulusData",
    "MomentInvarianceReport",
    "PoleProximityError",
    "PowerSeries",
    "QuadratureConfig",
    "ThetaChainParams",
    "ThetaValue",
    "WeightParams",
    "agm",
    "canonical_params",
    "chain_check",
    "chain_expression",
    "chain_params",
    "complete_K",
    "fourier_check_sn_dn",
    "integrate_weighted",
    "jacobi_complex",
    "jacobi_real",
    "jacobi_via_theta",
    "lhs_theorem1",
    "lhs_theorem2",
    "modulus_data",
    "moment_invariance_report",
    "moment_quadrature",
    "moments_from_taylor",
    "mystery_weight",
    "residue_series_I",
    "sn_over_cd",
    "taylor_sn_cn_dn",
    "taylor_sn_over_cd",
    "theta",
    "transform_half",
    "transform_inversion",
    "transform_shift",
]
