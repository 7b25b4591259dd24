from .experiments import (
    convergence_experiment,
    extension_experiment,
    maximal_bound_check,
    maximal_bound_experiment,
    maximal_integral,
    strichartz_experiment,
)
from .propagator import (
    MixedNormConfig,
    evolution_values,
    exact_mixed_norm,
    group_law_error,
    minimum_time_nodes,
    mixed_norm,
    mixed_norm_identity_error,
    periodicity_check,
    schrodinger_evolution,
    schrodinger_multiplier,
    single_mode_mixed_norm,
    time_grid,
    unitarity_error,
    wainger_multiplier,
)

__all__ = [
    "MixedNormConfig",
    "convergence_experiment",
    "evolution_values",
    "exact_mixed_norm",
    "extension_experiment",
    "group_law_error",
    "maximal_bound_check",
    "maximal_bound_experiment",
    "maximal_integral",
    "minimum_time_nodes",
    "mixed_norm",
    "mixed_norm_identity_error",
    "periodicity_check",
    "schrodinger_evolution",
    "schrodinger_multiplier",
    "single_mode_mixed_norm",
    "strichartz_experiment",
    "time_grid",
    "unitarity_error",
    "wainger_multiplier",
]
