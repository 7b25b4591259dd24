from .analysis import fourier_coeffs, grid_function, polynomial_coeffs, synthesize
from .checks import cosine_degeneration_error, expansion_experiment, orthonormality_error, round_trip_residual
from .polynomials import (
    eigenvalue,
    eigenvalues,
    growth_bound_ratio,
    jacobi_polynomial,
    jacobi_polynomial_derivative,
    jacobi_table,
    mu_density,
    normalization_constant,
    normalized_chunks,
    normalized_polynomial,
    normalized_polynomial_derivative_table,
    normalized_table,
    phi,
    phi_table,
    psi_weight,
)
from .quadrature import (
    GOLUB_WELSCH_CAP,
    adapted_rule,
    default_resolution,
    gauss_jacobi_theta,
    quadrature_rule,
)

__all__ = [
    "GOLUB_WELSCH_CAP",
    "adapted_rule",
    "cosine_degeneration_error",
    "default_resolution",
    "eigenvalue",
    "eigenvalues",
    "expansion_experiment",
    "fourier_coeffs",
    "gauss_jacobi_theta",
    "grid_function",
    "growth_bound_ratio",
    "jacobi_polynomial",
    "jacobi_polynomial_derivative",
    "jacobi_table",
    "mu_density",
    "normalization_constant",
    "normalized_chunks",
    "normalized_polynomial",
    "normalized_polynomial_derivative_table",
    "normalized_table",
    "orthonormality_error",
    "phi",
    "phi_table",
    "polynomial_coeffs",
    "psi_weight",
    "quadrature_rule",
    "round_trip_residual",
    "synthesize",
]
