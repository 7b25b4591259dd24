"""Jacobi polynomials, normalization and the trigonometric functions phi_n."""

import logging
from typing import Iterator, Tuple

import numpy as np
from scipy.special import gammaln

from ..exceptions import ParameterError
from ..helpers import as_theta, unwrap
from ..model import ParameterPair

_log = logging.getLogger(__name__)


def _check_index(n: int) -> None:
    if n < 0:
        raise ParameterError(f"Polynomial degree must be non-negative, got {n}")


def recurrence_chunks(n_terms: int, a: float, b: float, x: np.ndarray, chunk: int) -> Iterator[Tuple[int, np.ndarray]]:
    """Yield (start, block) with block[j] = P_{start+j}^{a,b}(x), `chunk` rows at a time.

    Uses the standard three-term recurrence
    2n(n+a+b)(2n+a+b-2) P_n = (2n+a+b-1)[(2n+a+b)(2n+a+b-2)x + a^2-b^2] P_{n-1}
                              - 2(n+a-1)(n+b-1)(2n+a+b) P_{n-2},
    carried across blocks so arbitrarily long series never hold the full table.
    """
    if chunk < 1:
        raise ParameterError(f"Chunk size must be positive, got {chunk}")
    x = np.asarray(x, dtype=float)
    ab2 = a * a - b * b
    prev2 = prev1 = None
    for start in range(0, max(n_terms, 0), chunk):
        stop = min(start + chunk, n_terms)
        block = np.empty((stop - start,) + x.shape)
        for n in range(start, stop):
            if n == 0:
                row = np.ones_like(x)
            elif n == 1:
                row = ((a + b + 2) * x + (a - b)) / 2
            else:
                c = 2 * n + a + b
                a1 = 2 * n * (n + a + b) * (c - 2)
                a2 = (c - 1) * ab2
                a3 = (c - 1) * c * (c - 2)
                a4 = 2 * (n + a - 1) * (n + b - 1) * c
                row = ((a2 + a3 * x) * prev1 - a4 * prev2) / a1
            block[n - start] = row
            prev2, prev1 = prev1, row
        yield start, block


def recurrence_table(n_terms: int, a: float, b: float, x: np.ndarray) -> np.ndarray:
    """Values P_0, ..., P_{n_terms-1} of the Jacobi polynomials with exponents (a, b) at x."""
    x = np.asarray(x, dtype=float)
    if n_terms <= 0:
        return np.empty((0,) + x.shape)
    return next(recurrence_chunks(n_terms, a, b, x, n_terms))[1]


def jacobi_table(n_terms: int, params: ParameterPair, x: np.ndarray) -> np.ndarray:
    """Table of P_n^{alpha,beta}(x) for n < n_terms, shape (n_terms,) + x.shape."""
    return recurrence_table(n_terms, params.alpha, params.beta, x)


def jacobi_polynomial(n: int, params: ParameterPair, x):
    """P_n^{alpha,beta}(x) via the three-term recurrence."""
    _check_index(n)
    xa = np.asarray(x, dtype=float)
    return recurrence_table(n + 1, params.alpha, params.beta, xa)[n]


def jacobi_polynomial_derivative(n: int, params: ParameterPair, x, k: int = 1):
    """k-th x-derivative of P_n^{alpha,beta}.

    d^k/dx^k P_n = Gamma(n+alpha+beta+1+k) / (2^k Gamma(n+alpha+beta+1)) P_{n-k}^{alpha+k,beta+k}
    """
    _check_index(n)
    if k < 0:
        raise ParameterError(f"Derivative order must be non-negative, got {k}")
    xa = np.asarray(x, dtype=float)
    if k == 0:
        return jacobi_polynomial(n, params, xa)
    if n < k:
        return np.zeros_like(xa)
    s = n + params.alpha + params.beta + 1
    factor = np.exp(gammaln(s + k) - gammaln(s) - k * np.log(2.0))
    return factor * jacobi_polynomial(n - k, params.shifted(k), xa)


def log_normalization(n: np.ndarray, a: float, b: float) -> np.ndarray:
    """log c_n^2 for exponents (a, b), with c_n^2 = 1 / int P_n^2 d mu_{a,b}."""
    n = np.asarray(n, dtype=float)
    general = (
        np.log(np.where(n > 0, 2 * n + a + b + 1, 1.0))
        + gammaln(np.where(n > 0, n + a + b + 1, 1.0))
    )
    # (a+b+1) Gamma(a+b+1) = Gamma(a+b+2) covers a + b = -1
    general = np.where(n > 0, general, gammaln(a + b + 2))
    return general + gammaln(n + 1) - gammaln(n + a + 1) - gammaln(n + b + 1)


def normalization_constant(n: int, params: ParameterPair) -> float:
    """c_n making c_n P_n(cos theta) orthonormal in L^2((0, pi), d mu_{alpha,beta})."""
    _check_index(n)
    return float(np.exp(0.5 * log_normalization(np.asarray(n), params.alpha, params.beta)))


def mu_density(theta, params: ParameterPair):
    """Density (sin theta/2)^{2 alpha+1} (cos theta/2)^{2 beta+1} of d mu_{alpha,beta}."""
    t, scalar = as_theta(theta)
    half = t / 2
    return unwrap(np.sin(half) ** (2 * params.alpha + 1) * np.cos(half) ** (2 * params.beta + 1), scalar)


def psi_weight(theta, params: ParameterPair):
    """Psi^{alpha,beta}(theta) = (sin theta/2)^{alpha+1/2} (cos theta/2)^{beta+1/2}."""
    t, scalar = as_theta(theta)
    half = t / 2
    return unwrap(np.sin(half) ** (params.alpha + 0.5) * np.cos(half) ** (params.beta + 0.5), scalar)


def eigenvalue(n: int, params: ParameterPair) -> float:
    """lambda_n = (n + (alpha+beta+1)/2)^2."""
    _check_index(n)
    return (n + params.a) ** 2


def eigenvalues(n_terms: int, params: ParameterPair) -> np.ndarray:
    return (np.arange(n_terms) + params.a) ** 2


def normalized_table(n_terms: int, params: ParameterPair, theta: np.ndarray) -> np.ndarray:
    """Rows c_n P_n(cos theta) for n < n_terms evaluated at an interior theta array."""
    logc = 0.5 * log_normalization(np.arange(n_terms), params.alpha, params.beta)
    table = jacobi_table(n_terms, params, np.cos(theta))
    return table * np.exp(logc).reshape((-1,) + (1,) * np.ndim(theta))


def phi_table(n_terms: int, params: ParameterPair, theta) -> np.ndarray:
    """Rows phi_0, ..., phi_{n_terms-1} on the theta grid, shape (n_terms, len(theta))."""
    t, _ = as_theta(theta)
    return normalized_table(n_terms, params, t) * psi_weight(t, params)


def normalized_polynomial(n: int, params: ParameterPair, theta):
    """The orthonormal polynomial c_n P_n(cos theta) = phi_n / Psi."""
    _check_index(n)
    t, scalar = as_theta(theta)
    return unwrap(normalized_table(n + 1, params, t)[n], scalar)


def normalized_polynomial_derivative_table(n_terms: int, params: ParameterPair, theta: np.ndarray) -> np.ndarray:
    """Rows d/dtheta [c_n P_n(cos theta)] for n < n_terms.

    Uses d/dx P_n = (n+alpha+beta+1)/2 P_{n-1}^{alpha+1,beta+1} and dx/dtheta = -sin theta.
    """
    n = np.arange(n_terms)
    logc = 0.5 * log_normalization(n, params.alpha, params.beta)
    shifted = np.zeros((n_terms,) + np.shape(theta))
    if n_terms > 1:
        shifted[1:] = jacobi_table(n_terms - 1, params.shifted(1), np.cos(theta))
    factor = np.exp(logc) * (n + params.alpha + params.beta + 1) / 2
    return -np.sin(theta) * shifted * factor.reshape((-1,) + (1,) * np.ndim(theta))


def normalized_chunks(
    n_terms: int, params: ParameterPair, theta: np.ndarray, chunk: int = 2048, derivative: bool = False
) -> Iterator[Tuple[int, np.ndarray]]:
    """Streamed version of `normalized_table` (or its theta-derivative) for long series."""
    x = np.cos(theta)
    if not derivative:
        for start, block in recurrence_chunks(n_terms, params.alpha, params.beta, x, chunk):
            n = np.arange(start, start + len(block))
            yield start, block * np.exp(0.5 * log_normalization(n, params.alpha, params.beta))[:, None]
        return
    # row n needs P_{n-1}^{alpha+1,beta+1}: delay the shifted stream by one row
    shifted = params.shifted(1)
    carry = np.zeros((1,) + x.shape)
    for start, block in recurrence_chunks(n_terms, shifted.alpha, shifted.beta, x, chunk):
        joined = np.concatenate([carry, block])
        carry = joined[-1:]
        n = np.arange(start, start + len(block))
        factor = np.exp(0.5 * log_normalization(n, params.alpha, params.beta)) * (n + params.alpha + params.beta + 1) / 2
        yield start, -np.sin(theta) * joined[:-1] * factor[:, None]


def phi(n: int, params: ParameterPair, theta):
    """phi_n^{alpha,beta}(theta) = Psi(theta) c_n P_n(cos theta); identically 0 for n < 0."""
    t, scalar = as_theta(theta)
    if n < 0:
        return unwrap(np.zeros_like(t), scalar)
    return unwrap(phi_table(n + 1, params, t)[n], scalar)


def growth_bound_ratio(params: ParameterPair, n_max: int, theta) -> float:
    """sup over n <= n_max and the grid of |phi_n| / (Psi (n+1)^{1/2 + max(alpha, beta, -1/2)})."""
    t, _ = as_theta(theta)
    table = np.abs(normalized_table(n_max + 1, params, t))
    exponent = 0.5 + max(params.alpha, params.beta, -0.5)
    scale = (np.arange(n_max + 1) + 1.0) ** exponent
    ratio = float(np.max(table / scale[:, None]))
    _log.debug("Growth bound ratio for %s up to n=%d: %.6g", params, n_max, ratio)
    return ratio
