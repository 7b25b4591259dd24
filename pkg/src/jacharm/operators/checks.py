"""Identities of the spectral operators checked on a single expansion."""

import numpy as np

from ..core.analysis import basis_table, synthesize
from ..exceptions import ParameterError
from ..helpers import as_theta
from ..model import Expansion
from .derivatives import derivative_D, differential_D
from .semigroup import poisson, poisson_maximal


def semigroup_law_error(e: Expansion, t: float, s: float) -> float:
    """max_n |(H_t H_s f)_n - (H_{t+s} f)_n| relative to max |a_n|."""
    lhs = poisson(poisson(e, s), t).coeffs
    rhs = poisson(e, t + s).coeffs
    scale = float(np.max(np.abs(e.coeffs))) or 1.0
    return float(np.max(np.abs(lhs - rhs))) / scale


def contraction_excess(e: Expansion, t: float) -> float:
    """max(0, ||H_t f||_2 - ||f||_2); the semigroup is an L^2 contraction."""
    return max(0.0, poisson(e, t).l2_norm() - e.l2_norm())


def refined_times(t_grid, refine: int = 8) -> np.ndarray:
    """0 and t_grid with refine - 1 equally spaced times inserted in every gap."""
    nodes = np.unique(np.concatenate([[0.0], np.asarray(t_grid, dtype=float)]))
    if nodes.size == 1:
        return nodes
    pieces = [np.linspace(a, b, refine + 1)[:-1] for a, b in zip(nodes[:-1], nodes[1:])]
    return np.concatenate(pieces + [nodes[-1:]])


def maximal_defect(e: Expansion, theta, t_grid, refine: int = 8) -> float:
    """How much sup_t |H_t f| grows when t_grid is refined, relative to the refined supremum.

    Small values mean the grid resolves the Poisson maximal function up to its last time.
    The refined profile is summed from the rates directly, independently of poisson_maximal.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size == 0:
        raise ParameterError("Poisson maximal check needs at least one time")
    if refine < 1:
        raise ParameterError(f"Refinement factor must be positive, got {refine}")
    t, _ = as_theta(theta)
    star = poisson_maximal(e, t, t_grid)
    table = e.coeffs[:, None] * basis_table(e.size, e.params, t, e.basis)
    rates = np.abs(np.arange(e.size) + e.params.a)
    profile = np.abs(np.exp(-np.outer(refined_times(t_grid, refine), rates)) @ table)
    fine = profile.max(axis=0)
    scale = max(float(fine.max()), np.finfo(float).tiny)
    return float(np.max(np.maximum(fine - star, 0.0))) / scale


def derivative_identity_error(e: Expansion, theta, step: float = 1e-5) -> float:
    """Relative gap between the coefficient-level D f and the differential operator applied to f.

    The differential side uses central differences, so the gap is of order step^2.
    """
    t, _ = as_theta(theta)
    spectral = synthesize(derivative_D(e), t)
    pointwise = differential_D(lambda x: synthesize(e, x), t, e.params, step)
    scale = max(float(np.max(np.abs(spectral))), np.finfo(float).tiny)
    return float(np.max(np.abs(spectral - pointwise))) / scale
