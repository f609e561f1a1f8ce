"""Boole's rule with exact Peano-kernel error bounds."""

from .bounds import (
    BoundReport,
    DerivativeStats,
    Estimate,
    bound,
    classical_monomial_bound,
    composite_bound,
    crossover_threshold,
    monomial_bound_value,
    monomial_stats,
    stats_from_samples,
)
from .kernels import (
    PiecewiseKernel,
    closed_form_kernel,
    critical_points,
    kernel_identity_check,
    kernel_integral,
    kernel_sup_abs,
    solve_kernel_coefficients,
)
from .quadrature import (
    Interval,
    Polynomial,
    boole,
    boole_exact,
    classical_error_bound,
    composite_boole,
    degree_of_exactness,
    integral_exact_poly,
)

__all__ = [
    "BoundReport",
    "DerivativeStats",
    "Estimate",
    "Interval",
    "PiecewiseKernel",
    "Polynomial",
    "boole",
    "boole_exact",
    "bound",
    "classical_error_bound",
    "classical_monomial_bound",
    "closed_form_kernel",
    "composite_bound",
    "composite_boole",
    "critical_points",
    "crossover_threshold",
    "degree_of_exactness",
    "integral_exact_poly",
    "kernel_identity_check",
    "kernel_integral",
    "kernel_sup_abs",
    "monomial_bound_value",
    "monomial_stats",
    "solve_kernel_coefficients",
    "stats_from_samples",
]
