import numpy as np

from ..core.analysis import synthesize
from ..exceptions import ParameterError
from ..model import Expansion, ParameterPair
from .multiplier import Multiplier, apply_multiplier, diagonal


def poisson_multiplier(params: ParameterPair, t: float) -> Multiplier:
    """exp(-t sqrt(lambda_n)); sqrt(lambda_n) = |n + A|."""
    return diagonal(params, lambda n: np.exp(-t * np.abs(n + params.a)), f"H_{t:g}")


def poisson(e: Expansion, t: float) -> Expansion:
    """Poisson-Jacobi semigroup H_t f."""
    if t < 0:
        raise ParameterError(f"Poisson semigroup time must be non-negative, got {t}")
    if t == 0:
        return e
    return apply_multiplier(e, poisson_multiplier(e.params, t))


def poisson_maximal(e: Expansion, theta, t_grid: np.ndarray) -> np.ndarray:
    """sup over t in t_grid (and t = 0) of |H_t f(theta)|."""
    t_grid = np.asarray(t_grid, dtype=float)
    if np.any(t_grid < 0):
        raise ParameterError("Poisson maximal function needs non-negative times")
    best = np.abs(synthesize(e, theta))
    for t in t_grid:
        best = np.maximum(best, np.abs(synthesize(poisson(e, float(t)), theta)))
    return best
