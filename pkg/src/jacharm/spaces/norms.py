"""L^p norms of grid functions and expansions, and potential-space norms.

Finite-p norms of expansions never sample |f|^p directly at the endpoints: writing
f = Psi^e F with F smooth, int |f|^p d nu is a Gauss-Jacobi sum of |F|^p for the exponents
that absorb the total power of Psi (see `adapted_exponents`).
"""

import logging
import math
from typing import Callable

import numpy as np

from ..core.analysis import synthesize
from ..core.quadrature import adapted_exponents, default_resolution, gauss_jacobi_theta
from ..exceptions import InadmissibleExponentsError, ParameterError, ParameterMismatchError, ResolutionError
from ..helpers import interior_grid, relative_drift
from ..model import Basis, Expansion, GridFunction, Measure, ParameterPair
from ..operators.multiplier import apply_multiplier
from ..operators.potentials import power_multiplier
from .tags import PotentialSpaceTag

REFINEMENT_TOLERANCE = 0.01
SUP_OVERSAMPLING = 8

_log = logging.getLogger(__name__)


def _check_exponent(p: float) -> None:
    if not (p >= 1 or p == math.inf):
        raise ParameterError(f"L^p exponent must be at least 1, got {p}")


def lp_norm(g: GridFunction, p: float) -> float:
    """(int |g|^p)^{1/p} with the grid weights; the grid maximum for p = inf.

    A grid function without weights is integrated against d theta by the trapezoidal rule.
    """
    _check_exponent(p)
    values = np.abs(g.values)
    if p == math.inf:
        return float(np.max(values))
    if g.weights is not None:
        return float(np.dot(g.weights, values**p) ** (1 / p))
    if g.measure != Measure.LEBESGUE:
        raise ParameterError(f"A grid function on the {g.measure} measure needs quadrature weights")
    return float(np.trapezoid(values**p, g.nodes) ** (1 / p))


def psi_power(basis: Basis, measure: Measure, p: float) -> float:
    """Total power of Psi in |f|^p d nu: p for the phi basis, plus 2 for d mu, plus p for w d mu."""
    power = p if basis == Basis.TRIGONOMETRIC else 0.0
    if measure == Measure.JACOBI:
        power += 2
    elif measure == Measure.WEIGHTED:
        power += p
    return power


def factored_lp_norm(
    smooth: Callable[[np.ndarray], np.ndarray], params: ParameterPair, p: float, power: float, size: int
) -> float:
    """(int |F|^p Psi^power d theta)^{1/p} for a function F with no endpoint singularity."""
    a, b = adapted_exponents(params, power)
    if not (a > -1 and b > -1):
        raise InadmissibleExponentsError(
            f"|F|^p Psi^{power:g} is not integrable for {params}: the exponent lies beyond p={params.exponent_range.upper:g}"
        )
    rule = gauss_jacobi_theta(size, a, b, Measure.JACOBI)
    values = np.abs(smooth(rule.nodes))
    return float(np.dot(rule.weights, values**p) ** (1 / p))


def _expansion_norm(e: Expansion, p: float, measure: Measure, size: int) -> float:
    if p == math.inf:
        grid = interior_grid(SUP_OVERSAMPLING * size)
        return float(np.max(np.abs(synthesize(e, grid))))
    if p == 2 and measure == Measure.LEBESGUE and e.basis == Basis.TRIGONOMETRIC:
        return e.l2_norm()
    polynomial = e.in_basis(Basis.POLYNOMIAL)
    power = psi_power(e.basis, measure, p)
    return factored_lp_norm(lambda t: synthesize(polynomial, t), e.params, p, power, size)


def expansion_lp_norm(
    e: Expansion,
    p: float,
    measure: Measure = Measure.LEBESGUE,
    resolution: int | None = None,
    sentinel: bool = True,
) -> float:
    """L^p norm of an expansion on d theta, d mu or w d mu.

    With `sentinel` the norm is recomputed at twice the resolution and a change above
    REFINEMENT_TOLERANCE raises ResolutionError. p = inf is the maximum on a uniform
    interior grid of SUP_OVERSAMPLING * resolution points.
    """
    _check_exponent(p)
    size = resolution or default_resolution(e.size)
    value = _expansion_norm(e, p, measure, size)
    if sentinel:
        refined = _expansion_norm(e, p, measure, 2 * size)
        drift = relative_drift(refined, value)
        if drift > REFINEMENT_TOLERANCE:
            raise ResolutionError(f"L^{p:g} norm changed by {drift:.3g} under grid refinement at resolution {size}")
        if drift > REFINEMENT_TOLERANCE / 2:
            _log.warning("L^%g norm drifts by %.3g under refinement at resolution %d", p, drift, size)
    return value


def inverse_potential(e: Expansion, tag: PotentialSpaceTag) -> Expansion:
    """g with f = (potential) g: multiplier lambda^{s/2}, (1+lambda)^{s/2} or (1+sqrt lambda)^s."""
    if e.params != tag.params:
        raise ParameterMismatchError(f"Expansion over {e.params} measured in a space over {tag.params}")
    return apply_multiplier(e, power_multiplier(tag.params, tag.flavor, tag.s / 2))


def potential_norm(e: Expansion, tag: PotentialSpaceTag, resolution: int | None = None, sentinel: bool = True) -> float:
    """||f||_{L^{p,s}} = ||g||_p where f is the potential of g."""
    return expansion_lp_norm(inverse_potential(e, tag), tag.p, resolution=resolution, sentinel=sentinel)


def sup_norm(e: Expansion, resolution: int | None = None) -> float:
    return expansion_lp_norm(e, math.inf, resolution=resolution)

