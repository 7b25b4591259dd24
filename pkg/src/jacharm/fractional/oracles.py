"""Exact-identity reports for the fractional calculus layer.

These compare two independent evaluations of the same quantity: the closed-form Caputo
derivative against its quadrature, the square-function side of the L^2 isometry against
Parseval, and g^{gamma,k} against g^{k-gamma} of a fractional power.
"""

import logging
import time
from typing import Sequence

import numpy as np

from ..core.analysis import basis_table
from ..core.polynomials import phi_table
from ..helpers import interior_grid
from ..model import Expansion, ExperimentReport, ParameterPair, RatioStats
from ..operators.potentials import Flavor, fractional_power
from .caputo import PoissonTrace, caputo_numeric, caputo_order, caputo_poisson
from .isometry import l2_isometry_check, polarized_isometry_check
from .square_functions import Method, check_orders, g_fractional, g_fractional_k, single_mode_constant
from .time_quadrature import rates

ORACLE_TOLERANCE = 1e-6
ISOMETRY_TOLERANCE = 1e-6
COMPOSITION_TOLERANCE = 1e-8
MODE_SPREAD_TOLERANCE = 1e-7
DEFAULT_ORACLE_GAMMAS = (0.3, 1.2, 2.7)
DEFAULT_ISOMETRY_GAMMAS = (0.25, 1.0, 3.5)

_log = logging.getLogger(__name__)


def _random_expansion(params: ParameterPair, n_terms: int, rng: np.random.Generator) -> Expansion:
    raw = rng.standard_normal((n_terms, 2))
    coeffs = (raw[:, 0] + 1j * raw[:, 1]) / np.sqrt(2) * (np.arange(n_terms) + 1.0) ** -1.5
    return Expansion(params=params, coeffs=coeffs)


def caputo_oracle_error(e: Expansion, gamma: float, t: float, theta: float) -> float:
    """|closed form - quadrature| relative to the absolute mode sum at (gamma, t, theta)."""
    closed = caputo_poisson(e, gamma, t, theta)
    numeric = caputo_numeric(PoissonTrace(e, theta), gamma, t)
    mu = rates(e.params, e.size)
    modes = e.coeffs * basis_table(e.size, e.params, np.array([theta]), e.basis)[:, 0]
    scale = float(np.sum(np.abs(mu**gamma * np.exp(-t * mu) * modes)))
    return abs(closed - numeric) / scale if scale > 0 else abs(numeric)


def caputo_oracle_experiment(
    params: ParameterPair,
    cases: int = 20,
    seed: int = 0,
    n_terms: int = 8,
    gammas: Sequence[float] = DEFAULT_ORACLE_GAMMAS,
    tolerance: float = ORACLE_TOLERANCE,
) -> ExperimentReport:
    """Closed-form Caputo derivative of H_t f against its quadrature on randomized (f, gamma, t, theta)."""
    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    rows = []
    for index in range(cases):
        e = _random_expansion(params, n_terms, rng)
        gamma = float(rng.choice(gammas))
        t = float(rng.uniform(0.05, 3.0))
        theta = float(rng.uniform(0.05, np.pi - 0.05))
        error = caputo_oracle_error(e, gamma, t, theta)
        rows.append({"index": index, "gamma": gamma, "m": caputo_order(gamma), "t": t, "theta": theta, "rel_err": error})
    worst = max(r["rel_err"] for r in rows)
    _log.info("Caputo oracle %s: %d cases, max rel err %.3g", params, cases, worst)
    return ExperimentReport(
        experiment="caputo-oracle",
        params=params,
        seed=seed,
        samples=cases,
        stats=RatioStats.from_values([r["rel_err"] for r in rows]),
        passed=worst <= tolerance,
        details={"max_rel_err": worst, "tolerance": tolerance, "cases": rows},
        config={"n_terms": n_terms, "gammas": list(gammas)},
        runtime_ms=(time.perf_counter() - started) * 1000,
    )


def isometry_experiment(
    params: ParameterPair,
    gammas: Sequence[float] = DEFAULT_ISOMETRY_GAMMAS,
    samples: int = 8,
    seed: int = 0,
    n_terms: int = 12,
    k: int = 4,
    method: Method = Method.QUADRATURE,
    tolerance: float = ISOMETRY_TOLERANCE,
) -> ExperimentReport:
    """Worst relative error of the L^2 isometry and its polarized form over random expansions.

    For every gamma < k the composition identity g^{gamma,k}(f) = g^{k-gamma}(L^{gamma/2} f) is
    checked on the same expansions against COMPOSITION_TOLERANCE, in closed form and, for
    Method.QUADRATURE, once more through the time quadrature; it needs a non-singular pair.
    """
    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    expansions = [_random_expansion(params, n_terms, rng) for _ in range(samples + 1)]
    theta = interior_grid(32, 0.05)
    per_gamma = []
    for gamma in gammas:
        plain = max(l2_isometry_check(e, gamma, method=method).rel_err for e in expansions[:samples])
        polar = max(
            polarized_isometry_check(e, other, gamma, method=method).rel_err
            for e, other in zip(expansions[:samples], expansions[1:])
        )
        row = {"gamma": float(gamma), "isometry_rel_err": plain, "polarized_rel_err": polar}
        if gamma < k and not params.singular:
            row["composition_rel_err"] = max(composition_error(e, gamma, k, theta) for e in expansions[:samples])
            if method == Method.QUADRATURE:
                row["composition_quadrature_rel_err"] = max(
                    composition_error(e, gamma, k, theta, method) for e in expansions[:samples]
                )
        per_gamma.append(row)
        _log.debug("Isometry gamma=%g: %.3g, polarized %.3g", gamma, plain, polar)
    worst = max(max(r["isometry_rel_err"], r["polarized_rel_err"]) for r in per_gamma)
    composition = max(
        (max(r.get("composition_rel_err", 0.0), r.get("composition_quadrature_rel_err", 0.0)) for r in per_gamma),
        default=0.0,
    )
    _log.info("Isometry experiment %s: max rel err %.3g, composition %.3g", params, worst, composition)
    return ExperimentReport(
        experiment="gfunc",
        params=params,
        seed=seed,
        samples=samples,
        passed=worst <= tolerance and composition <= COMPOSITION_TOLERANCE,
        k=k,
        details={"max_rel_err": worst, "composition_max_rel_err": composition, "tolerance": tolerance, "gammas": per_gamma},
        config={"n_terms": n_terms, "method": str(method)},
        runtime_ms=(time.perf_counter() - started) * 1000,
    )


def composition_error(e: Expansion, gamma: float, k: int, theta, method: Method = Method.GRAM) -> float:
    """Max relative deviation of g^{gamma,k}(f) from g^{k-gamma}(L^{gamma/2} f) on a theta grid."""
    check_orders(gamma, k)
    lhs = g_fractional_k(e, gamma, k, theta, method=method)
    rhs = g_fractional(fractional_power(e, gamma / 2, Flavor.RIESZ), k - gamma, theta, method=method)
    scale = np.maximum(np.abs(lhs), np.finfo(float).tiny)
    return float(np.max(np.abs(lhs - rhs) / scale))


def mode_independence_spread(params: ParameterPair, gamma: float, n_max: int = 40, points: int = 64) -> float:
    """max / min over n <= n_max with lambda_n > 0 of g^gamma(phi_n)(theta) / (|phi_n(theta)| sqrt(Gamma(2 gamma)) / 2^gamma)."""
    theta = interior_grid(points, 0.05)
    table = np.abs(phi_table(n_max + 1, params, theta))
    constant = single_mode_constant(gamma)
    ratios = []
    for n in range(n_max + 1):
        if params.singular and n == 0:
            continue
        mask = table[n] > 1e-6
        g = g_fractional(Expansion.unit(params, n), gamma, theta[mask], method=Method.GRAM)
        ratios.append(g / (table[n][mask] * constant))
    values = np.concatenate(ratios)
    return float(values.max() / values.min() - 1)
