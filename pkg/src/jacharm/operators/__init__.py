from .checks import contraction_excess, derivative_identity_error, maximal_defect, refined_times, semigroup_law_error
from .derivatives import (
    derivative_D,
    derivative_multiplier,
    differential_D,
    higher_derivative,
    higher_derivative_multiplier,
    riesz_transform,
    riesz_transform_multiplier,
)
from .multiplier import Multiplier, apply_multiplier, compose, diagonal, identity
from .potentials import (
    Flavor,
    bessel_potential,
    fractional_power,
    modified_bessel_potential,
    mutual_inverse_symbols,
    potential_multiplier,
    power_multiplier,
    riesz_potential,
)
from .semigroup import poisson, poisson_maximal, poisson_multiplier

__all__ = [
    "Flavor",
    "Multiplier",
    "apply_multiplier",
    "bessel_potential",
    "compose",
    "contraction_excess",
    "derivative_D",
    "derivative_identity_error",
    "derivative_multiplier",
    "diagonal",
    "differential_D",
    "fractional_power",
    "higher_derivative",
    "higher_derivative_multiplier",
    "identity",
    "maximal_defect",
    "modified_bessel_potential",
    "mutual_inverse_symbols",
    "poisson",
    "poisson_maximal",
    "poisson_multiplier",
    "potential_multiplier",
    "power_multiplier",
    "refined_times",
    "riesz_potential",
    "riesz_transform",
    "riesz_transform_multiplier",
    "semigroup_law_error",
]
