from .caputo import Exponential, PoissonTrace, TimeFunction, caputo_numeric, caputo_order, caputo_poisson
from .isometry import IsometryReport, PolarizationReport, l2_isometry_check, polarized_isometry_check
from .oracles import (
    caputo_oracle_error,
    caputo_oracle_experiment,
    composition_error,
    isometry_experiment,
    mode_independence_spread,
)
from .square_functions import (
    Method,
    g_fractional,
    g_fractional_k,
    g_tilde,
    g_tilde_k,
    single_mode_constant,
    square_function_sq,
)
from .time_quadrature import Scheme, TimeQuadrature, validate_time_quadrature

__all__ = [
    "Exponential",
    "IsometryReport",
    "Method",
    "PoissonTrace",
    "PolarizationReport",
    "Scheme",
    "TimeFunction",
    "TimeQuadrature",
    "caputo_numeric",
    "caputo_oracle_error",
    "caputo_oracle_experiment",
    "caputo_order",
    "caputo_poisson",
    "composition_error",
    "g_fractional",
    "g_fractional_k",
    "g_tilde",
    "g_tilde_k",
    "isometry_experiment",
    "l2_isometry_check",
    "mode_independence_spread",
    "polarized_isometry_check",
    "single_mode_constant",
    "square_function_sq",
    "validate_time_quadrature",
]
