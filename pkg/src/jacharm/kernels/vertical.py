"""Vertical (t-direction) norms in the polynomial setting.

The kernel of g^gamma is the L^2(t^{2 gamma - 1} dt)-valued function
t -> d_t^gamma H_t(theta, phi). The Caputo derivative acts term by term as
(-1)^m mu_n^gamma, so the sign drops out of every norm below.
"""

import logging
import time
from typing import Tuple

import numpy as np

from ..core.analysis import polynomial_coeffs, synthesize
from ..core.polynomials import psi_weight
from ..core.quadrature import default_resolution, quadrature_rule
from ..exceptions import InadmissibleExponentsError, ParameterError, ParameterMismatchError
from ..fractional.square_functions import Method, check_orders, g_fractional, single_mode_constant
from ..fractional.time_quadrature import TimeQuadrature, rates
from ..helpers import as_theta
from ..model import Basis, Expansion, ExperimentReport, Measure, ParameterPair
from ..pipelines.ratio_suite import Statistic, run_stability_protocol
from ..spaces.norms import expansion_lp_norm, factored_lp_norm
from ..spaces.sampler import SamplerConfig, sampler_for
from .geometry import HomogeneousSpace
from .poisson_kernel import (
    DEFAULT_T_FLOOR,
    TAIL_TOLERANCE,
    check_off_diagonal,
    kernel_points,
    series_rows,
    truncation_order,
)

CONJUGATION_TOLERANCE = 1e-8

_log = logging.getLogger(__name__)


def kernel_time_rule(
    params: ParameterPair, gamma: float, n_terms: int, t_floor: float, tq: TimeQuadrature | None = None
) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes t >= t_floor and weights integrating against t^{2 gamma - 1} dt."""
    mu = rates(params, n_terms)
    positive = mu[mu > 0]
    if positive.size == 0:
        positive = np.array([1.0])
    if tq is None:
        tq = TimeQuadrature.build(gamma, float(positive.min()), float(positive.max()))
    elif not np.isclose(tq.exponent, gamma, rtol=1e-12, atol=0):
        raise ParameterError(f"Time quadrature built for exponent {tq.exponent}, needed {gamma}")
    keep = tq.nodes >= t_floor
    return tq.nodes[keep], tq.density_weights[keep]


def _resolve_terms(params: ParameterPair, gamma: float, n_terms: int | None, tol: float, t_floor: float, derivative: bool) -> int:
    if n_terms is not None:
        if n_terms < 1:
            raise ParameterError(f"Kernel truncation must be positive, got {n_terms}")
        return n_terms
    return truncation_order(params, t_floor, gamma, tol, derivative, t_floor)


def _vertical_norms(
    params: ParameterPair,
    gamma: float,
    theta,
    phi,
    tq: TimeQuadrature | None,
    t_floor: float,
    n_terms: int | None,
    tol: float,
    derivative: bool,
):
    check_orders(gamma)
    check_off_diagonal(theta, phi)
    n_terms = _resolve_terms(params, gamma, n_terms, tol, t_floor, derivative)
    t, w = kernel_time_rule(params, gamma, n_terms, t_floor, tq)
    points, ix, iy, shape = kernel_points(theta, phi)
    kernels = [np.zeros((t.size, ix.size)) for _ in range(2 if derivative else 1)]
    for n, rows, slopes in series_rows(params, n_terms, points, derivative):
        mu = n + params.a
        with np.errstate(divide="ignore"):
            decay = np.exp(gamma * np.log(mu)[None, :] - np.multiply.outer(t, mu))
        decay[:, mu == 0] = 0.0
        if derivative:
            kernels[0] += decay @ (slopes[:, ix] * rows[:, iy])
            kernels[1] += decay @ (rows[:, ix] * slopes[:, iy])
        else:
            kernels[0] += decay @ (rows[:, ix] * rows[:, iy])
    _log.debug("Vertical kernel norms: %d pairs, %d terms, %d time nodes", ix.size, n_terms, t.size)
    norms = sum(np.sqrt(w @ k**2) for k in kernels).reshape(shape)
    return float(norms) if norms.ndim == 0 else norms


def frac_kernel_vertical_norm(
    space: HomogeneousSpace,
    gamma: float,
    theta,
    phi,
    tq: TimeQuadrature | None = None,
    t_floor: float = DEFAULT_T_FLOOR,
    n_terms: int | None = None,
    tol: float = TAIL_TOLERANCE,
):
    """||d_t^gamma H_t(theta, phi)||_{L^2(t^{2 gamma - 1} dt)}, broadcast over off-diagonal pairs.

    The t-integral starts at `t_floor`; `n_terms` overrides the truncation N(t_floor).

    Raises:
        DomainError: If some theta equals its phi.
    """
    return _vertical_norms(space.params, gamma, theta, phi, tq, t_floor, n_terms, tol, derivative=False)


def frac_kernel_gradient_norm(
    space: HomogeneousSpace,
    gamma: float,
    theta,
    phi,
    tq: TimeQuadrature | None = None,
    t_floor: float = DEFAULT_T_FLOOR,
    n_terms: int | None = None,
    tol: float = TAIL_TOLERANCE,
):
    """||d_theta K(theta, phi)|| + ||d_phi K(theta, phi)|| for K = {d_t^gamma H_t}_t.

    The theta-derivatives of P_n come from the exact degree-lowering relation, not differences.
    """
    return _vertical_norms(space.params, gamma, theta, phi, tq, t_floor, n_terms, tol, derivative=True)


def single_mode_vertical_norm(space: HomogeneousSpace, gamma: float) -> float:
    """Vertical norm when only P_0 is kept, |P_0|^2 sqrt(Gamma(2 gamma)) / 2^gamma at every pair."""
    if space.params.singular:
        return 0.0
    p0 = 1 / np.sqrt(space.total_mass)
    return float(p0 * p0 * single_mode_constant(gamma))


def g_vertical_poly(
    space: HomogeneousSpace,
    e: Expansion,
    gamma: float,
    theta,
    tq: TimeQuadrature | None = None,
    method: Method = Method.QUADRATURE,
):
    """g^gamma(F)(theta) for F = sum b_n P_n, b_n = <F, P_n>_{d mu}."""
    if e.basis != Basis.POLYNOMIAL:
        raise ParameterError("g_vertical_poly needs an expansion in the polynomial system")
    if e.params != space.params:
        raise ParameterMismatchError(f"Expansion over {e.params} on the space over {space.params}")
    return g_fractional(e, gamma, theta, tq, method)


def conjugation_check(e: Expansion, gamma: float, theta, method: Method = Method.GRAM) -> float:
    """Max relative error of g^gamma(f) = Psi g^gamma_poly(f / Psi) on a theta grid.

    The polynomial-side coefficients are recovered from samples of f / Psi with a
    d mu Gauss rule, so the check covers analysis in both systems.
    """
    if e.basis != Basis.TRIGONOMETRIC:
        raise ParameterError("conjugation_check starts from an expansion in the phi_n system")
    t, _ = as_theta(theta)
    params = e.params
    rule = quadrature_rule(default_resolution(e.size), params, Measure.JACOBI)
    poly = polynomial_coeffs(lambda x: synthesize(e, x) / psi_weight(x, params), e.size, params, rule)
    lhs = g_fractional(e, gamma, t, method=method)
    rhs = psi_weight(t, params) * g_vertical_poly(HomogeneousSpace(params=params), poly, gamma, t, method=method)
    scale = np.maximum(np.abs(lhs), np.finfo(float).tiny)
    error = float(np.max(np.abs(lhs - rhs) / scale))
    _log.debug("Conjugation check %s gamma=%g: max rel err %.3g", params, gamma, error)
    return error


def weighted_g_experiment(
    params: ParameterPair,
    p: float,
    gamma: float,
    sampler: SamplerConfig | None = None,
    resolution: int | None = None,
    method: Method = Method.QUADRATURE,
    max_concurrent: int = 4,
) -> ExperimentReport:
    """Spread of ||g^gamma(F)||_{L^p(w d mu)} / ||F||_{L^p(w d mu)} for w = Psi^p / Psi^{2 alpha+1/2, 2 beta+1/2}.

    Since w d mu = Psi^p d theta, both norms use the p-adapted Gauss rules.
    """
    sampler = sampler or SamplerConfig()
    check_orders(gamma)
    if not params.exponent_range.contains(p):
        raise InadmissibleExponentsError(f"p={p} lies outside {params.exponent_range} for {params}")
    started = time.perf_counter()
    space = HomogeneousSpace(params=params)
    tq = TimeQuadrature.for_params(params, gamma, sampler.n_terms) if method == Method.QUADRATURE else None
    _log.info("Weighted g-function experiment %s, p=%g, gamma=%g", params, p, gamma)

    def ratio(e: Expansion, res: int) -> float:
        poly = e.in_basis(Basis.POLYNOMIAL)
        g_norm = factored_lp_norm(lambda x: g_vertical_poly(space, poly, gamma, x, tq, method), params, p, p, res)
        if params.singular:
            g_norm += abs(poly.coeffs[0])
        return g_norm / expansion_lp_norm(poly, p, Measure.WEIGHTED, res, sentinel=False)

    resolution = resolution or default_resolution(sampler.n_terms)
    result = run_stability_protocol(
        sampler_for(params, sampler), ratio, sampler.samples, resolution,
        Statistic.SPREAD, max_concurrent=max_concurrent, name="weighted-g",
    )
    return ExperimentReport(
        experiment="weighted-g",
        params=params,
        p=p,
        s_or_gamma=gamma,
        seed=sampler.seed,
        samples=sampler.samples,
        stats=result.stats,
        passed=result.passed,
        details=result.details(),
        config={"sampler": sampler.model_dump(), "method": str(method), "weight": "Psi^p / Psi^(2a+1/2, 2b+1/2)"},
        runtime_ms=(time.perf_counter() - started) * 1000,
    )

