"""Numerical check of the two-branch bound on the nested integral

    I(q) = int_0^1 ( int_0^1 t^{2 gamma - 1} / ((t + s)^2 + q)^eta dt )^{1/2} s^xi ds,

I(q) <~ q^{-(eta - xi - gamma - 1)/2} when eta - xi - gamma > 1 and <~ log(4/q) otherwise.
"""

import logging
import math
import time
import warnings
from typing import List, Sequence

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from ..exceptions import ConvergenceError, ParameterError
from ..model import ExperimentReport, ParameterPair, RatioStats

DEFAULT_Q_GRID = tuple(10.0 ** -k for k in range(7))
SPREAD_LIMIT = 5.0
INNER_TOLERANCE = 1e-10
OUTER_TOLERANCE = 1e-7
QUAD_LIMIT = 200

_log = logging.getLogger(__name__)


def _quad(f, a: float, b: float, epsrel: float, **kwargs) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        try:
            value, _ = quad(f, a, b, epsabs=0.0, epsrel=epsrel, limit=QUAD_LIMIT, **kwargs)
        except IntegrationWarning as e:
            raise ConvergenceError(f"Adaptive quadrature on [{a:.3g}, {b:.3g}] failed: {e}") from e
    return value


def _panels(c: float) -> List[float]:
    """Geometric breakpoints strictly inside (c, 1)."""
    if c >= 1:
        return []
    return list(np.geomspace(c, 1.0, 6)[1:-1])


def inner_integral(s: float, q: float, eta: float, gamma: float) -> float:
    """int_0^1 t^{2 gamma - 1} / ((t + s)^2 + q)^eta dt."""

    def f(t):
        return ((t + s) ** 2 + q) ** -eta

    # the integrand varies on the scale max(s, sqrt q) near t = 0
    c = min(1.0, max(s, math.sqrt(q)))
    value = _quad(f, 0.0, c, INNER_TOLERANCE, weight="alg", wvar=(2 * gamma - 1, 0.0))
    if c < 1:
        value += _quad(lambda t: t ** (2 * gamma - 1) * f(t), c, 1.0, INNER_TOLERANCE, points=_panels(c) or None)
    return value


def nested_integral(q: float, eta: float, xi: float, gamma: float) -> float:
    """I(q) by nested adaptive quadrature."""

    def outer(s):
        return math.sqrt(inner_integral(s, q, eta, gamma))

    c = min(1.0, math.sqrt(q))
    value = _quad(outer, 0.0, c, OUTER_TOLERANCE, weight="alg", wvar=(xi, 0.0))
    if c < 1:
        value += _quad(lambda s: outer(s) * s**xi, c, 1.0, OUTER_TOLERANCE, points=_panels(c) or None)
    return value


def lemma_bound(q: float, eta: float, xi: float, gamma: float) -> float:
    exponent = eta - xi - gamma - 1
    if exponent > 0:
        return q ** (-exponent / 2)
    return math.log(4 / q)


def lemma36_check(
    eta: float,
    xi: float,
    gamma: float,
    q_grid: Sequence[float] = DEFAULT_Q_GRID,
    spread_limit: float = SPREAD_LIMIT,
) -> ExperimentReport:
    """Ratios I(q) / bound(q) over a decreasing q grid; passes when their spread stays below `spread_limit`.

    Raises:
        ParameterError: If xi <= -1, gamma <= 0 or the q grid is not decreasing inside (0, 2].
        ConvergenceError: If a quadrature fails, typically for extreme eta as q -> 0.
    """
    if not xi > -1:
        raise ParameterError(f"xi must exceed -1, got {xi}")
    if not gamma > 0:
        raise ParameterError(f"gamma must be positive, got {gamma}")
    qs = np.asarray(q_grid, dtype=float)
    if qs.size == 0 or np.any(qs <= 0) or np.any(qs > 2) or np.any(np.diff(qs) >= 0):
        raise ParameterError(f"q grid must be decreasing inside (0, 2], got {list(q_grid)}")
    started = time.perf_counter()
    branch = "power" if eta - xi - gamma > 1 else "log"
    _log.info("Nested integral check eta=%g xi=%g gamma=%g (%s branch)", eta, xi, gamma, branch)
    curve = []
    for q in qs:
        value = nested_integral(float(q), eta, xi, gamma)
        bound = lemma_bound(float(q), eta, xi, gamma)
        curve.append({"q": float(q), "integral": value, "bound": bound, "ratio": value / bound})
        _log.debug("q=%g: I=%.10g, bound=%.6g", q, value, bound)
    ratios = np.array([c["ratio"] for c in curve])
    stats = RatioStats.from_values(ratios)
    finite = bool(np.all(np.isfinite(ratios)))
    passed = finite and stats.spread < spread_limit
    _log.log(logging.INFO if passed else logging.WARNING, "Nested integral check: spread %.4g, pass=%s", stats.spread, passed)
    return ExperimentReport(
        experiment="lemma36",
        # the check involves no Jacobi pair; (0, 0) keeps the report schema uniform
        params=ParameterPair(alpha=0.0, beta=0.0),
        s_or_gamma=gamma,
        stats=stats,
        passed=passed,
        details={"eta": eta, "xi": xi, "branch": branch, "spread": stats.spread, "curve": curve},
        config={"q_grid": qs.tolist(), "spread_limit": spread_limit},
        runtime_ms=(time.perf_counter() - started) * 1000,
    )
