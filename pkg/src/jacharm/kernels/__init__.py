from .audits import GridConfig, HeatmapCell, audit_params, cz_gradient_audit, cz_growth_audit, scan_grid
from .geometry import (
    HomogeneousSpace,
    QForm,
    ball_measure,
    comparability_model,
    comparability_ratios,
    doubling_constant,
    qform_lower_bound,
)
from .nested_integral import lemma36_check, lemma_bound, nested_integral
from .poisson_kernel import (
    DEFAULT_T_FLOOR,
    KERNEL_TERMS_CAP,
    cosine_poisson_kernel,
    discarded_tail,
    poisson_kernel_poly,
    truncation_order,
)
from .vertical import (
    CONJUGATION_TOLERANCE,
    conjugation_check,
    frac_kernel_gradient_norm,
    frac_kernel_vertical_norm,
    g_vertical_poly,
    single_mode_vertical_norm,
    weighted_g_experiment,
)

__all__ = [
    "CONJUGATION_TOLERANCE",
    "DEFAULT_T_FLOOR",
    "GridConfig",
    "HeatmapCell",
    "HomogeneousSpace",
    "KERNEL_TERMS_CAP",
    "QForm",
    "audit_params",
    "ball_measure",
    "comparability_model",
    "comparability_ratios",
    "conjugation_check",
    "cosine_poisson_kernel",
    "cz_gradient_audit",
    "cz_growth_audit",
    "discarded_tail",
    "doubling_constant",
    "frac_kernel_gradient_norm",
    "frac_kernel_vertical_norm",
    "g_vertical_poly",
    "lemma36_check",
    "lemma_bound",
    "nested_integral",
    "poisson_kernel_poly",
    "qform_lower_bound",
    "scan_grid",
    "single_mode_vertical_norm",
    "truncation_order",
    "weighted_g_experiment",
]
