"""Finite bead ensembles on line segments: exact kernels, samplers, and limits."""

from .hexagon import (
    BudgetExceededError,
    DiscreteHexagon,
    LatticeConfiguration,
    enumerate_configurations,
)
from .kernel import (
    KernelContext,
    SpacePoint,
    expected_count,
    kernel_context,
    kernel_eval,
    kernel_matrix,
    line_density,
    npoint_correlation,
)
from .model import (
    BeadConfiguration,
    HexagonSpec,
    InterlacingShapeError,
    interlace_indicator,
    line_marginal_unnormalized,
    line_weight,
    particles_per_line,
)
from .oracle import discrete_kernel, grid_points, moment_matrix, oracle_deviation
from .orthopoly import (
    CIParams,
    JacobiIndex,
    ci_asymptotic,
    ci_params,
    darboux_coefficient,
    darboux_data,
    jacobi_norm,
    jacobi_shifted,
    jacobi_tower,
    log_jacobi_norm,
    szego_asymptotic,
)
from .sampler import (
    RandomStream,
    SecularProblem,
    dirichlet_draw,
    sample_configuration,
    sample_many,
    sample_positions,
    secular_zeros,
)
from .scaling import (
    ScalingContext,
    b_factor_variants,
    boutillier_kernel,
    bulk_convergence_probe,
    bulk_kernel,
    gamma_parameter,
    global_density,
    region_parameters,
    scaling_context,
    support_interval,
    tail_integral_real,
)
from .stats import (
    Histogram,
    beta_cdf,
    empirical_line_density,
    ks_statistic,
    pair_correlation_estimate,
)

__version__ = "0.1.0"

__all__ = [
    "BeadConfiguration",
    "BudgetExceededError",
    "CIParams",
    "DiscreteHexagon",
    "Histogram",
    "HexagonSpec",
    "InterlacingShapeError",
    "JacobiIndex",
    "KernelContext",
    "LatticeConfiguration",
    "RandomStream",
    "ScalingContext",
    "SecularProblem",
    "SpacePoint",
    "b_factor_variants",
    "beta_cdf",
    "boutillier_kernel",
    "bulk_convergence_probe",
    "bulk_kernel",
    "ci_asymptotic",
    "ci_params",
    "darboux_coefficient",
    "darboux_data",
    "dirichlet_draw",
    "discrete_kernel",
    "empirical_line_density",
    "enumerate_configurations",
    "expected_count",
    "gamma_parameter",
    "global_density",
    "grid_points",
    "interlace_indicator",
    "jacobi_norm",
    "jacobi_shifted",
    "jacobi_tower",
    "kernel_context",
    "kernel_eval",
    "kernel_matrix",
    "ks_statistic",
    "line_density",
    "line_marginal_unnormalized",
    "line_weight",
    "log_jacobi_norm",
    "moment_matrix",
    "npoint_correlation",
    "oracle_deviation",
    "pair_correlation_estimate",
    "particles_per_line",
    "region_parameters",
    "sample_configuration",
    "sample_many",
    "sample_positions",
    "scaling_context",
    "secular_zeros",
    "support_interval",
    "szego_asymptotic",
    "tail_integral_real",
]
