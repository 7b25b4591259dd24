"""The first order operator D, its iterates D^(k) and the Riesz-Jacobi transforms."""

from typing import Callable

import numpy as np

from ..exceptions import ParameterError
from ..model import Expansion, ParameterPair
from .multiplier import Multiplier, apply_multiplier, compose
from .potentials import Flavor, power_multiplier


def derivative_multiplier(params: ParameterPair) -> Multiplier:
    """D phi_n = -sqrt(lambda_n - lambda_0) phi_{n-1}^{alpha+1,beta+1}."""
    s = params.alpha + params.beta + 1

    def symbol(n: np.ndarray) -> np.ndarray:
        return -np.sqrt(n * (n + s))

    return Multiplier(
        symbol=symbol,
        shift=-1,
        source_params=params,
        target_params=params.shifted(1),
        name=f"D{params}",
    )


def higher_derivative_multiplier(params: ParameterPair, k: int) -> Multiplier:
    """D^(k) = D_{alpha+k-1,beta+k-1} o ... o D_{alpha,beta} as one multiplier.

    Closed-form symbol (-1)^k prod_{j<k} sqrt((n-j)(n+j+alpha+beta+1)).
    """
    if k < 1:
        raise ParameterError(f"Derivative order must be at least 1, got {k}")
    s = params.alpha + params.beta + 1

    def symbol(n: np.ndarray) -> np.ndarray:
        n = np.asarray(n, dtype=float)
        out = np.ones_like(n)
        for j in range(k):
            out = out * np.sqrt(np.clip((n - j) * (n + j + s), 0, None))
        return (-1) ** k * out

    return Multiplier(
        symbol=symbol,
        shift=-k,
        source_params=params,
        target_params=params.shifted(k),
        name=f"D^({k}){params}",
    )


def derivative_D(e: Expansion) -> Expansion:
    """D f over (alpha+1, beta+1); the n = 0 mode is annihilated."""
    return apply_multiplier(e, derivative_multiplier(e.params))


def higher_derivative(e: Expansion, k: int) -> Expansion:
    """k-fold application of D with parameter stepping; lands in (alpha+k, beta+k)."""
    if k < 1:
        raise ParameterError(f"Derivative order must be at least 1, got {k}")
    out = e
    for _ in range(k):
        out = derivative_D(out)
    return out


def riesz_transform_multiplier(params: ParameterPair, k: int) -> Multiplier:
    """D^(k) L^{-k/2} for non-singular pairs, D^(k) (id+L)^{-k/2} for alpha + beta = -1."""
    flavor = Flavor.BESSEL if params.singular else Flavor.RIESZ
    return compose(power_multiplier(params, flavor, -k / 2), higher_derivative_multiplier(params, k))


def riesz_transform(e: Expansion, k: int) -> Expansion:
    """Riesz-Jacobi transform R^k f."""
    return apply_multiplier(e, riesz_transform_multiplier(e.params, k))


def differential_D(f: Callable[[np.ndarray], np.ndarray], theta: np.ndarray, params: ParameterPair, step: float = 1e-5) -> np.ndarray:
    """d/dtheta - (2 alpha+1)/4 cot(theta/2) + (2 beta+1)/4 tan(theta/2) applied to f,
    with the theta-derivative taken by central differences.
    """
    centre = f(theta)
    dtheta = (f(theta + step) - f(theta - step)) / (2 * step)
    half = theta / 2
    return (
        dtheta
        - (2 * params.alpha + 1) / 4 / np.tan(half) * centre
        + (2 * params.beta + 1) / 4 * np.tan(half) * centre
    )
