from .experiments import (
    check_embedding,
    derivative_experiment,
    embedding_experiment,
    equivalence_experiment,
    g_k_monotonicity_experiment,
    gfunction_norm_experiment,
    multiplier_experiment,
    norm_experiment,
    pencil_experiment,
    pencil_norms,
    riesz_transform_experiment,
    semigroup_experiment,
    square_function_lp_norm,
    structural_experiment,
)
from .norms import (
    REFINEMENT_TOLERANCE,
    expansion_lp_norm,
    factored_lp_norm,
    inverse_potential,
    lp_norm,
    potential_norm,
    sup_norm,
)
from .sampler import DEFAULT_DECAY, DEFAULT_SAMPLES, DEFAULT_TRUNCATION, SamplerConfig, sample_expansions, sampler_for
from .tags import PotentialSpaceTag

__all__ = [
    "DEFAULT_DECAY",
    "DEFAULT_SAMPLES",
    "DEFAULT_TRUNCATION",
    "PotentialSpaceTag",
    "REFINEMENT_TOLERANCE",
    "SamplerConfig",
    "check_embedding",
    "derivative_experiment",
    "embedding_experiment",
    "equivalence_experiment",
    "expansion_lp_norm",
    "factored_lp_norm",
    "g_k_monotonicity_experiment",
    "gfunction_norm_experiment",
    "inverse_potential",
    "lp_norm",
    "multiplier_experiment",
    "norm_experiment",
    "pencil_experiment",
    "pencil_norms",
    "potential_norm",
    "riesz_transform_experiment",
    "sample_expansions",
    "sampler_for",
    "semigroup_experiment",
    "square_function_lp_norm",
    "structural_experiment",
    "sup_norm",
]
