"""Numerical laboratory for average-expansion identities of SL(2,R)
matrix products, Lyapunov exponents of linear cocycles, and the growth of
spectral radii along orbits."""

__version__ = "0.1.0"

from .mat2 import (
    DET_TOLERANCE,
    PolarForm,
    ScaledProduct,
    check_sl2,
    diag_hyperbolic,
    n_value,
    operator_norm,
    polar_decompose,
    polar_matrix,
    product_chain,
    rotation,
    spectral_radius,
)
from .complexify import (
    EigenPair,
    c_matrix,
    centro_check,
    eigen2,
    eigen_moduli,
    equal_modulus,
    s_matrix,
    sampled_separation,
    t_matrix,
)
from .quadrature import (
    IntegralEstimate,
    IntegrandError,
    QuadratureSpec,
    grid_values,
    periodic_average,
    write_grid_csv,
)
from .formulas import (
    FormulaReport,
    MeasureBoundReport,
    avg_expansion_check,
    f_integral_check,
    fubini_check,
    measure_bound_check,
    theorem1_check,
    theorem2_check,
)
from .cocycles import (
    BernoulliHIRMap,
    BernoulliShift,
    CircleRotation,
    CocycleSpec,
    ConfigurationError,
    ConstantMap,
    GOLDEN_FRACTION,
    HermanMap,
    LyapunovReport,
    SpectralGrowthReport,
    TableMap,
    bernoulli_cocycle_value,
    bernoulli_hir,
    cocycle_factors,
    cocycle_product,
    constant_cocycle,
    herman_cocycle,
    herman_equality_check,
    lyapunov_estimate,
    spectral_growth,
    star_identity_probe,
    table_cocycle,
)
from .randprod import (
    ConstantStretch,
    DedieuShubReport,
    LawSpec,
    LogUniformStretch,
    dedieu_shub_check,
    sample_matrix,
)
