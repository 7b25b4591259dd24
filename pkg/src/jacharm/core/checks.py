"""Exact checks of the Jacobi system: orthonormality, the cosine case and analysis/synthesis."""

import logging
import time

import numpy as np

from ..model import Expansion, ExperimentReport, GridFunction, Measure, ParameterPair, QuadratureRule
from .analysis import FunctionLike, fourier_coeffs, synthesize
from .polynomials import phi_table
from .quadrature import default_resolution, quadrature_rule

EXACTNESS_TOLERANCE = 1e-10
COSINE_PAIR = ParameterPair(alpha=-0.5, beta=-0.5)

_log = logging.getLogger(__name__)


def orthonormality_error(params: ParameterPair, n_max: int = 40) -> float:
    """max over i, j <= n_max of |<phi_i, phi_j> - delta_ij|, by a rule exact on the products."""
    rule = quadrature_rule(n_max + 2, params, Measure.LEBESGUE)
    table = phi_table(n_max + 1, params, rule.nodes)
    gram = (table * rule.weights) @ table.T
    return float(np.max(np.abs(gram - np.eye(n_max + 1))))


def cosine_degeneration_error(n_max: int = 40, points: int = 200) -> float:
    """max |phi_n^{-1/2,-1/2} - sqrt(2/pi) cos(n theta)| over 1 <= n <= n_max on an open grid."""
    theta = np.linspace(0, np.pi, points + 2)[1:-1]
    table = phi_table(n_max + 1, COSINE_PAIR, theta)
    n = np.arange(1, n_max + 1)[:, None]
    return float(np.max(np.abs(table[1:] - np.sqrt(2 / np.pi) * np.cos(n * theta))))


def round_trip_residual(f: FunctionLike, e: Expansion, rule: QuadratureRule) -> float:
    """Relative discrete L^2 distance between f and its truncated expansion on the nodes of `rule`."""
    values = f.values if isinstance(f, GridFunction) else np.broadcast_to(np.asarray(f(rule.nodes)), rule.nodes.shape)
    residual = values - synthesize(e, rule.nodes)
    norm = np.sqrt(rule.integrate(np.abs(values) ** 2).real)
    error = np.sqrt(rule.integrate(np.abs(residual) ** 2).real)
    return float(error / norm) if norm > 0 else float(error)


def expansion_experiment(
    f: FunctionLike, params: ParameterPair, n_terms: int, resolution: int | None = None, name: str = "f"
) -> ExperimentReport:
    """Analyse f into n_terms coefficients and check the round trip.

    Passes when re-analysing the synthesized expansion returns its coefficients and the
    system is orthonormal up to n_terms, both to 1e-10. The truncation residual of f
    itself is reported, not judged.
    """
    started = time.perf_counter()
    rule = quadrature_rule(resolution or default_resolution(n_terms), params, Measure.LEBESGUE)
    e = fourier_coeffs(f, n_terms, params, rule)
    again = fourier_coeffs(lambda t: synthesize(e, t), n_terms, params, rule)
    coefficient_error = float(np.max(np.abs(again.coeffs - e.coeffs)))
    orthonormality = orthonormality_error(params, n_terms - 1)
    residual = round_trip_residual(f, e, rule)
    passed = coefficient_error <= EXACTNESS_TOLERANCE and orthonormality <= EXACTNESS_TOLERANCE
    _log.info("Expanded %s over %s: %d terms, residual %.3g, pass=%s", name, params, n_terms, residual, passed)
    return ExperimentReport(
        experiment="expand",
        params=params,
        passed=passed,
        details={
            "function": name,
            "n_terms": n_terms,
            "resolution": rule.size,
            "round_trip_residual": residual,
            "coefficient_error": coefficient_error,
            "orthonormality_error": orthonormality,
            "expansion": e.to_record(),
        },
        runtime_ms=(time.perf_counter() - started) * 1000,
    )
