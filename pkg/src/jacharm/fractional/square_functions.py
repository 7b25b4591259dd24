"""Fractional square functions of the Poisson-Jacobi semigroup.

All four variants share one shape: for rates mu_n (sqrt(lambda_n), or 1 + sqrt(lambda_n)
for the tilde variants), a power p of the rate and a time exponent delta,

    G(f)(theta)^2 = int_0^inf | t^delta sum_n mu_n^p e^{-t mu_n} a_n phi_n(theta) |^2 dt/t.

g^gamma uses (p, delta) = (gamma, gamma), g^{gamma,k} uses (k, k - gamma).
"""

import logging
from enum import StrEnum

import numpy as np
from scipy.special import gammaln

from ..core.analysis import basis_table
from ..exceptions import ParameterError, ResolutionError
from ..helpers import as_theta, unwrap
from ..model import Expansion
from .time_quadrature import TimeQuadrature, rates

_log = logging.getLogger(__name__)


class Method(StrEnum):
    """QUADRATURE integrates in t numerically, GRAM uses the closed-form t-integral."""

    QUADRATURE = "quadrature"
    GRAM = "gram"


def check_orders(gamma: float, k: int | None = None) -> None:
    if not gamma > 0:
        raise ParameterError(f"Square function order must be positive, got {gamma}")
    if k is not None and not k > gamma:
        raise ParameterError(f"Integer order k must exceed gamma, got k={k}, gamma={gamma}")


def trace_coefficients(e: Expansion, theta: np.ndarray) -> np.ndarray:
    """Matrix a_n phi_n(theta), shape (n_terms, len(theta))."""
    return e.coeffs[:, None] * basis_table(e.size, e.params, theta, e.basis)


def gram_matrix(mu: np.ndarray, power: float, delta: float) -> np.ndarray:
    """Gamma(2 delta) mu_n^p mu_m^p / (mu_n + mu_m)^{2 delta}, zero where a rate vanishes."""
    with np.errstate(divide="ignore", invalid="ignore"):
        log_mu = np.log(mu)
        total = mu[:, None] + mu[None, :]
        log_g = gammaln(2 * delta) + power * (log_mu[:, None] + log_mu[None, :]) - 2 * delta * np.log(total)
        g = np.exp(log_g)
    g[~np.isfinite(g)] = 0.0
    g[(mu[:, None] == 0) | (mu[None, :] == 0)] = 0.0
    return g


def resolve_time_quadrature(
    e: Expansion, delta: float, shift: float, tq: TimeQuadrature | None
) -> TimeQuadrature:
    mu = rates(e.params, e.size, shift)
    positive = mu[mu > 0]
    if tq is None:
        return TimeQuadrature.for_params(e.params, delta, e.size, shift)
    if not np.isclose(tq.exponent, delta, rtol=1e-12, atol=0):
        raise ParameterError(f"Time quadrature built for exponent {tq.exponent}, needed {delta}")
    if positive.size and not tq.covers(float(positive.min()), float(positive.max())):
        raise ResolutionError(
            f"Time quadrature covers rates [{tq.rate_min}, {tq.rate_max}], "
            f"expansion needs [{positive.min()}, {positive.max()}]"
        )
    return tq


def cross_square(
    e: Expansion,
    other: Expansion,
    theta: np.ndarray,
    power: float,
    delta: float,
    shift: float = 0.0,
    tq: TimeQuadrature | None = None,
    method: Method = Method.QUADRATURE,
) -> np.ndarray:
    """int_0^inf t^{2 delta} V_f(t, theta) conj(V_g(t, theta)) dt/t for V = sum mu^p e^{-t mu} a_n phi_n."""
    if e.params != other.params:
        raise ParameterError("Both expansions must share the parameter pair")
    size = max(e.size, other.size)
    cf = np.zeros((size, theta.size), dtype=np.complex128)
    cg = np.zeros((size, theta.size), dtype=np.complex128)
    cf[: e.size] = trace_coefficients(e, theta)
    cg[: other.size] = trace_coefficients(other, theta)
    mu = rates(e.params, size, shift)
    if method == Method.GRAM:
        g = gram_matrix(mu, power, delta)
        return np.einsum("nt,nm,mt->t", cf, g, np.conj(cg))
    wide = e if e.size >= other.size else other
    tq = resolve_time_quadrature(wide, delta, shift, tq)
    with np.errstate(divide="ignore"):
        kernel = np.exp(power * np.log(mu)[None, :] - np.multiply.outer(tq.nodes, mu))
    kernel[:, mu == 0] = 0.0
    vf = kernel @ cf
    vg = vf if other is e else kernel @ cg
    return tq.density_weights @ (vf * np.conj(vg))


def square_function_sq(
    e: Expansion,
    theta,
    power: float,
    delta: float,
    shift: float = 0.0,
    tq: TimeQuadrature | None = None,
    method: Method = Method.QUADRATURE,
):
    t, scalar = as_theta(theta)
    values = np.clip(np.real(cross_square(e, e, t, power, delta, shift, tq, Method(method))), 0, None)
    return unwrap(values, scalar)


def g_fractional(e: Expansion, gamma: float, theta, tq: TimeQuadrature | None = None, method: Method = Method.QUADRATURE):
    """g^gamma(f)(theta) = (int |t^gamma d_t^gamma H_t f(theta)|^2 dt/t)^{1/2}."""
    check_orders(gamma)
    return np.sqrt(square_function_sq(e, theta, gamma, gamma, 0.0, tq, method))


def g_fractional_k(
    e: Expansion, gamma: float, k: int, theta, tq: TimeQuadrature | None = None, method: Method = Method.QUADRATURE
):
    """g^{gamma,k}(f)(theta) = (int |t^{k-gamma} d^k/dt^k H_t f(theta)|^2 dt/t)^{1/2}."""
    check_orders(gamma, k)
    return np.sqrt(square_function_sq(e, theta, k, k - gamma, 0.0, tq, method))


def g_tilde(e: Expansion, gamma: float, theta, tq: TimeQuadrature | None = None, method: Method = Method.QUADRATURE):
    """g^gamma for the shifted semigroup e^{-t} H_t (rates 1 + sqrt(lambda_n))."""
    check_orders(gamma)
    return np.sqrt(square_function_sq(e, theta, gamma, gamma, 1.0, tq, method))


def g_tilde_k(
    e: Expansion, gamma: float, k: int, theta, tq: TimeQuadrature | None = None, method: Method = Method.QUADRATURE
):
    """g^{gamma,k} for the shifted semigroup e^{-t} H_t."""
    check_orders(gamma, k)
    return np.sqrt(square_function_sq(e, theta, k, k - gamma, 1.0, tq, method))


def single_mode_constant(gamma: float) -> float:
    """sqrt(Gamma(2 gamma)) / 2^gamma, the value of g^gamma(phi_n) / |phi_n| for lambda_n > 0."""
    return float(np.exp(0.5 * gammaln(2 * gamma) - gamma * np.log(2.0)))
