"""The Schrodinger group exp(itL) on finite expansions and its mixed L^p_theta L^q_t norms."""

import logging
import math

import numpy as np
from pydantic import BaseModel, Field, model_validator

from ..core.analysis import basis_table
from ..core.polynomials import eigenvalues, psi_weight
from ..core.quadrature import default_resolution
from ..exceptions import InadmissibleExponentsError, ParameterError, ResolutionError
from ..helpers import as_theta, relative_drift
from ..model import Basis, Expansion, ParameterPair
from ..operators.multiplier import Multiplier, apply_multiplier, diagonal
from ..spaces.norms import expansion_lp_norm, factored_lp_norm

PERIOD = 2 * np.pi
NYQUIST_FACTOR = 8
MIN_TIME_NODES = 64
IDENTITY_TOLERANCE = 1e-8

_log = logging.getLogger(__name__)


def schrodinger_multiplier(params: ParameterPair, t: float) -> Multiplier:
    return diagonal(params, lambda n: np.exp(1j * t * (n + params.a) ** 2), f"exp({t:g}iL)")


def schrodinger_evolution(e: Expansion, t: float) -> Expansion:
    """exp(itL) f: coefficients e^{it lambda_n} a_n."""
    if t == 0:
        return e
    return apply_multiplier(e, schrodinger_multiplier(e.params, t))


def wainger_multiplier(e: Expansion, q: float) -> Expansion:
    """Coefficients lambda_n^{1/2 - 1/q} a_n, the fractional integration behind the L^q_t extension."""
    if not q >= 2:
        raise ParameterError(f"Time exponent must be at least 2, got {q}")
    exponent = 0.5 - 1 / q
    return apply_multiplier(
        e, diagonal(e.params, lambda n: ((n + e.params.a) ** 2) ** exponent, f"L^{exponent:g}")
    )


def minimum_time_nodes(e: Expansion) -> int:
    """Nodes needed on [0, 2 pi] to resolve exp(i t lambda_N) for the top active mode N."""
    return max(NYQUIST_FACTOR * e.active_degree**2, MIN_TIME_NODES)


def time_grid(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Closed trapezoidal rule on [0, 2 pi] with `nodes` intervals."""
    t = np.linspace(0.0, PERIOD, nodes + 1)
    w = np.full(t.shape, PERIOD / nodes)
    w[[0, -1]] /= 2
    return t, w


def evolution_values(e: Expansion, t: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Matrix (len(t), len(theta)) of exp(itL) f(theta)."""
    lam = eigenvalues(e.size, e.params)
    phases = np.exp(1j * np.multiply.outer(np.asarray(t, dtype=float), lam)) * e.coeffs
    return phases @ basis_table(e.size, e.params, theta, e.basis)


class MixedNormConfig(BaseModel):
    """Exponents and resolutions of the L^p_theta(0, pi) L^q_t(0, 2 pi) norm."""

    p_theta: float = Field(description="Outer exponent in theta")
    q_t: float = Field(default=2.0, description="Inner exponent in t on [0, 2 pi]")
    time_nodes: int | None = Field(default=None, description="Intervals of the t-rule; default 8 N^2")
    theta_resolution: int | None = Field(default=None, description="Size of the theta rule")

    @model_validator(mode="after")
    def _validate(self) -> "MixedNormConfig":
        if not self.q_t >= 2:
            raise ParameterError(f"Time exponent must be at least 2, got {self.q_t}")
        if not self.p_theta >= 1:
            raise ParameterError(f"Theta exponent must be at least 1, got {self.p_theta}")
        return self


def exact_mixed_norm(e: Expansion, p: float, theta_resolution: int | None = None) -> float:
    """||(2 pi sum |a_n|^2 phi_n^2)^{1/2}||_p, the L^2_t norm for integer alpha + beta."""
    weights = np.abs(e.coeffs) ** 2

    def smooth(theta: np.ndarray) -> np.ndarray:
        table = basis_table(e.size, e.params, theta, Basis.POLYNOMIAL)
        return np.sqrt(PERIOD * (weights @ table**2))

    size = theta_resolution or default_resolution(e.size)
    return factored_lp_norm(smooth, e.params, p, p, size)


def _quadrature_mixed_norm(e: Expansion, cfg: MixedNormConfig) -> float:
    t, w = time_grid(cfg.time_nodes or minimum_time_nodes(e))
    psi_power = cfg.p_theta if e.basis == Basis.TRIGONOMETRIC else 0.0

    def smooth(theta: np.ndarray) -> np.ndarray:
        values = np.abs(evolution_values(e, t, theta)) ** cfg.q_t
        inner = (w @ values) ** (1 / cfg.q_t)
        return inner / psi_weight(theta, e.params) if psi_power else inner

    size = cfg.theta_resolution or default_resolution(e.size)
    return factored_lp_norm(smooth, e.params, cfg.p_theta, psi_power, size)


def mixed_norm(e: Expansion, cfg: MixedNormConfig, cross_check: bool = True) -> float:
    """||exp(itL) f||_{L^p_theta L^q_t}.

    For q = 2 and integer alpha + beta the t-integral has the closed form
    2 pi sum |a_n|^2 phi_n^2; it is returned, after comparison with the t-quadrature when
    `cross_check` is set. Otherwise the t-norm is the trapezoidal rule on [0, 2 pi].

    Raises:
        ResolutionError: If the t-rule is coarser than 8 N^2 intervals for the top active mode N,
            or the cross-check misses by more than IDENTITY_TOLERANCE.
    """
    params = e.params
    if not params.exponent_range.contains(cfg.p_theta):
        raise InadmissibleExponentsError(f"p={cfg.p_theta} lies outside {params.exponent_range} for {params}")
    needed = minimum_time_nodes(e)
    if cfg.time_nodes is not None and cfg.time_nodes < needed:
        raise ResolutionError(f"{cfg.time_nodes} t-intervals cannot resolve lambda_{e.active_degree}; need {needed}")
    if not np.any(e.coeffs):
        return 0.0
    exact = cfg.q_t == 2 and params.integer_sum and e.basis == Basis.TRIGONOMETRIC
    if not exact:
        return _quadrature_mixed_norm(e, cfg)
    value = exact_mixed_norm(e, cfg.p_theta, cfg.theta_resolution)
    if cross_check:
        numeric = _quadrature_mixed_norm(e, cfg)
        drift = relative_drift(value, numeric)
        _log.debug("Mixed norm identity check: exact %.12g, quadrature %.12g", value, numeric)
        if drift > IDENTITY_TOLERANCE:
            raise ResolutionError(f"t-quadrature misses the exact mixed norm by {drift:.3g}")
    return value


def unitarity_error(e: Expansion, t: float) -> float:
    """| ||exp(itL) f||_2 - ||f||_2 | relative to ||f||_2."""
    norm = e.l2_norm()
    return abs(schrodinger_evolution(e, t).l2_norm() - norm) / norm if norm > 0 else 0.0


def group_law_error(e: Expansion, s: float, t: float) -> float:
    """max_n |(exp(isL) exp(itL) f)_n - (exp(i(s+t)L) f)_n| relative to max |a_n|."""
    lhs = schrodinger_evolution(schrodinger_evolution(e, t), s).coeffs
    rhs = schrodinger_evolution(e, s + t).coeffs
    scale = float(np.max(np.abs(e.coeffs))) or 1.0
    return float(np.max(np.abs(lhs - rhs))) / scale


def mixed_norm_identity_error(e: Expansion, p: float, theta_resolution: int | None = None) -> float:
    """Relative gap between the closed-form L^p_theta L^2_t norm and its t-quadrature.

    Needs an integer alpha + beta, where the closed form holds.
    """
    if not e.params.integer_sum:
        raise ParameterError(f"The closed-form mixed norm needs an integer alpha + beta, got {e.params}")
    cfg = MixedNormConfig(p_theta=p, theta_resolution=theta_resolution)
    return relative_drift(exact_mixed_norm(e, p, theta_resolution), _quadrature_mixed_norm(e, cfg))


def periodicity_check(e: Expansion, theta, t_grid: np.ndarray) -> float:
    """max over the grids of ||exp(i(t + 2 pi)L) f| - |exp(itL) f||."""
    th, _ = as_theta(theta)
    t = np.asarray(t_grid, dtype=float)
    now = np.abs(evolution_values(e, t, th))
    later = np.abs(evolution_values(e, t + PERIOD, th))
    return float(np.max(np.abs(later - now))) if now.size else 0.0


def single_mode_mixed_norm(params: ParameterPair, n: int, p: float) -> float:
    """sqrt(2 pi) ||phi_n||_p."""
    return math.sqrt(PERIOD) * expansion_lp_norm(Expansion.unit(params, n), p)
