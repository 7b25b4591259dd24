import logging

import numpy as np
from pydantic import BaseModel
from scipy.special import gammaln

from ..core.quadrature import quadrature_rule
from ..model import Expansion
from .square_functions import Method, check_orders, cross_square
from .time_quadrature import TimeQuadrature

_log = logging.getLogger(__name__)


class IsometryReport(BaseModel):
    """Both sides of ||f||_2^2 = 2^{2 gamma}/Gamma(2 gamma) ||g^gamma(f)||_2^2 + [alpha+beta=-1] |a_0|^2."""

    lhs: float
    rhs: float
    rel_err: float


class PolarizationReport(BaseModel):
    """Both sides of <f, g> = 2^{2 gamma}/Gamma(2 gamma) int int d^gamma H_t f conj(d^gamma H_t g) t^{2 gamma-1} dt d theta + [...] a_0 conj(b_0)."""

    lhs: complex
    rhs: complex
    rel_err: float


def _scale(gamma: float) -> float:
    return float(np.exp(2 * gamma * np.log(2.0) - gammaln(2 * gamma)))


def _theta_integral(e: Expansion, other: Expansion, gamma: float, tq, method: Method) -> complex:
    # g^2 is Psi^2 times a polynomial of degree < 2N - 1: a Gauss rule of N + 2 nodes is exact
    rule = quadrature_rule(max(e.size, other.size) + 2, e.params)
    values = cross_square(e, other, rule.nodes, gamma, gamma, 0.0, tq, method)
    return complex(rule.integrate(values))


def l2_isometry_check(
    e: Expansion, gamma: float, tq: TimeQuadrature | None = None, method: Method = Method.QUADRATURE
) -> IsometryReport:
    """Compare ||f||_2^2 with the square-function side of the L^2 isometry."""
    check_orders(gamma)
    lhs = float(np.sum(np.abs(e.coeffs) ** 2))
    rhs = _scale(gamma) * _theta_integral(e, e, gamma, tq, method).real
    if e.params.singular:
        rhs += float(np.abs(e.coeffs[0]) ** 2)
    rel_err = abs(lhs - rhs) / lhs if lhs > 0 else abs(rhs)
    _log.debug("L2 isometry gamma=%g: lhs=%.12g rhs=%.12g", gamma, lhs, rhs)
    return IsometryReport(lhs=lhs, rhs=rhs, rel_err=rel_err)


def polarized_isometry_check(
    e: Expansion, other: Expansion, gamma: float, tq: TimeQuadrature | None = None, method: Method = Method.QUADRATURE
) -> PolarizationReport:
    """Polarized form of the isometry for a pair of expansions."""
    check_orders(gamma)
    size = min(e.size, other.size)
    lhs = complex(np.vdot(other.coeffs[:size], e.coeffs[:size]))
    rhs = _scale(gamma) * _theta_integral(e, other, gamma, tq, method)
    if e.params.singular:
        rhs += complex(e.coeffs[0] * np.conj(other.coeffs[0]))
    norm = np.sqrt(np.sum(np.abs(e.coeffs) ** 2) * np.sum(np.abs(other.coeffs) ** 2))
    rel_err = abs(lhs - rhs) / norm if norm > 0 else abs(rhs)
    return PolarizationReport(lhs=lhs, rhs=rhs, rel_err=float(rel_err))
