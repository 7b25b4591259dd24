import logging
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from ..exceptions import ParameterError, ResolutionError
from ..model import Measure, ParameterPair, QuadratureRule

GOLUB_WELSCH_CAP = 4096

_log = logging.getLogger(__name__)


@lru_cache(maxsize=256)
def _gauss_jacobi(size: int, a: float, b: float):
    x, w = roots_jacobi(size, a, b)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(w)) and np.all(w > 0)):
        raise ResolutionError(f"Gauss-Jacobi eigen-solve failed for N={size}, a={a}, b={b}")
    # x ascending means theta descending
    theta = np.arccos(x)[::-1].copy()
    w = w[::-1].copy()
    theta.setflags(write=False)
    w.setflags(write=False)
    return theta, w


def gauss_jacobi_theta(size: int, a: float, b: float, measure: Measure = Measure.LEBESGUE) -> QuadratureRule:
    """Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b mapped to theta = arccos x.

    The x-weights W_k are converted with (1-x)^a (1+x)^b dx = 2^{a+b+1} d mu_{a,b}:
    JACOBI (and WEIGHTED) rules carry W_k / 2^{a+b+1}, LEBESGUE rules additionally divide
    by the d mu_{a,b} density at the node.

    Args:
        size: Number of nodes N, the rule is exact up to polynomial degree 2N-1.
        a, b: Jacobi exponents, both greater than -1.
        measure: Measure tag of the returned rule.
    """
    if size < 1:
        raise ParameterError(f"Quadrature size must be positive, got {size}")
    if size > GOLUB_WELSCH_CAP:
        raise ResolutionError(f"Quadrature size {size} exceeds the cap {GOLUB_WELSCH_CAP}")
    if not (a > -1 and b > -1):
        raise ParameterError(f"Gauss-Jacobi exponents must exceed -1, got ({a}, {b})")
    theta, w = _gauss_jacobi(size, float(a), float(b))
    weights = w / 2.0 ** (a + b + 1)
    if measure == Measure.LEBESGUE:
        half = theta / 2
        weights = weights / (np.sin(half) ** (2 * a + 1) * np.cos(half) ** (2 * b + 1))
    _log.debug("Gauss-Jacobi rule N=%d a=%g b=%g measure=%s", size, a, b, measure)
    return QuadratureRule(nodes=theta, weights=weights, measure=measure, alpha=a, beta=b)


def quadrature_rule(size: int, params: ParameterPair, measure: Measure = Measure.LEBESGUE) -> QuadratureRule:
    """Gauss-Jacobi rule for the pair's weight integrating against d theta or d mu_{alpha,beta}."""
    return gauss_jacobi_theta(size, params.alpha, params.beta, measure)


def adapted_exponents(params: ParameterPair, p: float) -> tuple[float, float]:
    """Exponents (a, b) with (sin theta/2)^{2a+1} (cos theta/2)^{2b+1} = Psi^p.

    Both exceed -1 exactly when p < p(alpha, beta).
    """
    return p * (params.alpha + 0.5) / 2 - 0.5, p * (params.beta + 0.5) / 2 - 0.5


def adapted_rule(size: int, params: ParameterPair, p: float, measure: Measure = Measure.LEBESGUE) -> QuadratureRule:
    """Rule absorbing the endpoint behaviour |Psi|^p of |f|^p for f in the span of phi_n.

    With measure=WEIGHTED the weights integrate against Psi^p d theta, used for
    polynomial-system functions F = f / Psi.
    """
    a, b = adapted_exponents(params, p)
    if not (a > -1 and b > -1):
        raise ParameterError(f"No p-adapted rule: p={p} is outside {params.exponent_range} for {params}")
    rule = gauss_jacobi_theta(size, a, b, Measure.JACOBI if measure == Measure.WEIGHTED else measure)
    if measure == Measure.WEIGHTED:
        return rule.model_copy(update={"measure": Measure.WEIGHTED})
    return rule


def default_resolution(n_terms: int) -> int:
    """Rule size used for norms of expansions with n_terms modes."""
    return 4 * n_terms + 32
