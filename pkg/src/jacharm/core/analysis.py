import logging
from typing import Callable, Union

import numpy as np

from ..exceptions import ParameterError, ParameterMismatchError, ResolutionError
from ..helpers import as_theta, unwrap
from ..model import Basis, Expansion, GridFunction, Measure, ParameterPair, QuadratureRule
from .polynomials import normalized_table, phi_table

_log = logging.getLogger(__name__)

FunctionLike = Union[GridFunction, Callable[[np.ndarray], np.ndarray]]


def basis_table(n_terms: int, params: ParameterPair, theta: np.ndarray, basis: Basis) -> np.ndarray:
    if basis == Basis.POLYNOMIAL:
        return normalized_table(n_terms, params, theta)
    return phi_table(n_terms, params, theta)


def fourier_coeffs(f: FunctionLike, n_terms: int, params: ParameterPair, rule: QuadratureRule) -> Expansion:
    """Coefficients a_n(f) = int f phi_n d theta, n < n_terms, approximated by a d theta rule.

    A rule of size M built for the same pair integrates f phi_n exactly whenever
    f lies in the span of phi_0, ..., phi_{2M-n_terms}; N > M is rejected.
    """
    if rule.measure != Measure.LEBESGUE:
        raise ParameterError(f"Fourier-Jacobi coefficients need a d theta rule, got {rule.measure}")
    if (rule.alpha, rule.beta) != (params.alpha, params.beta):
        raise ParameterMismatchError(f"Rule built for ({rule.alpha}, {rule.beta}) cannot analyse over {params}")
    if n_terms < 1:
        raise ParameterError(f"Number of coefficients must be positive, got {n_terms}")
    if n_terms > rule.size:
        raise ResolutionError(f"{n_terms} coefficients requested from a rule with {rule.size} nodes")
    if isinstance(f, GridFunction):
        if f.nodes.shape != rule.nodes.shape or not np.allclose(f.nodes, rule.nodes, rtol=0, atol=1e-14):
            raise ParameterError("Grid function is not sampled on the quadrature nodes")
        values = f.values
    else:
        values = np.asarray(f(rule.nodes))
        values = np.broadcast_to(values, rule.nodes.shape)
    table = phi_table(n_terms, params, rule.nodes)
    coeffs = table @ (rule.weights * values)
    _log.debug("Analysed %d coefficients on %d nodes for %s", n_terms, rule.size, params)
    return Expansion(params=params, coeffs=coeffs)


def polynomial_coeffs(f: FunctionLike, n_terms: int, params: ParameterPair, rule: QuadratureRule) -> Expansion:
    """Coefficients <F, P_n>_{d mu} of a function F in the polynomial system, from a d mu rule."""
    if rule.measure != Measure.JACOBI:
        raise ParameterError(f"Polynomial-system coefficients need a d mu rule, got {rule.measure}")
    if n_terms > rule.size:
        raise ResolutionError(f"{n_terms} coefficients requested from a rule with {rule.size} nodes")
    values = f.values if isinstance(f, GridFunction) else np.broadcast_to(np.asarray(f(rule.nodes)), rule.nodes.shape)
    coeffs = normalized_table(n_terms, params, rule.nodes) @ (rule.weights * values)
    return Expansion(params=params, coeffs=coeffs, basis=Basis.POLYNOMIAL)


def synthesize(e: Expansion, theta):
    """sum a_n phi_n(theta) (or sum a_n P_n(theta) for polynomial-basis expansions)."""
    t, scalar = as_theta(theta)
    values = e.coeffs @ basis_table(e.size, e.params, t, e.basis)
    return unwrap(values, scalar)


def grid_function(e: Expansion, rule: QuadratureRule, measure: Measure | None = None) -> GridFunction:
    """Expansion sampled on the nodes of a rule."""
    return GridFunction.on_rule(rule, synthesize(e, rule.nodes), measure)
