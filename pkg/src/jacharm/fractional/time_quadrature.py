from __future__ import annotations

import logging
from enum import StrEnum

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.special import gamma as gamma_fn
from scipy.special import gammaincinv, gammainccinv, roots_laguerre, roots_legendre

from ..exceptions import ConvergenceError, ParameterError
from ..model import ParameterPair

DEFAULT_TAIL_TOLERANCE = 1e-15
DEFAULT_LOG_STEP = 0.125
VALIDATION_TOLERANCE = 1e-8

_log = logging.getLogger(__name__)


class Scheme(StrEnum):
    SPLIT_LOG = "split-log"
    LAGUERRE_TAIL = "laguerre-tail"


def rates(params: ParameterPair, n_terms: int, shift: float = 0.0) -> np.ndarray:
    """Decay rates sqrt(lambda_n) + shift of the (shifted) Poisson semigroup."""
    return np.abs(np.arange(n_terms) + params.a) + shift


class TimeQuadrature(BaseModel):
    """Discretization of int_0^inf F(t) t^{2 delta} dt/t for sums of exponentials F.

    Nodes on (0, 1] form the panel part, nodes on [1, inf) the tail part. `weights`
    integrate against dt/t; `density_weights` include the factor t^{2 delta}.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    scheme: Scheme
    exponent: float
    rate_min: float
    rate_max: float
    panel_nodes: np.ndarray
    panel_weights: np.ndarray
    tail_nodes: np.ndarray
    tail_weights: np.ndarray

    @property
    def nodes(self) -> np.ndarray:
        return np.concatenate([self.panel_nodes, self.tail_nodes])

    @property
    def weights(self) -> np.ndarray:
        return np.concatenate([self.panel_weights, self.tail_weights])

    @property
    def density_weights(self) -> np.ndarray:
        return self.weights * self.nodes ** (2 * self.exponent)

    @property
    def size(self) -> int:
        return int(self.panel_nodes.size + self.tail_nodes.size)

    def covers(self, rate_min: float, rate_max: float) -> bool:
        return self.rate_min <= rate_min * (1 + 1e-12) and rate_max <= self.rate_max * (1 + 1e-12)

    @classmethod
    def build(
        cls,
        exponent: float,
        rate_min: float,
        rate_max: float,
        scheme: Scheme = Scheme.SPLIT_LOG,
        tol: float = DEFAULT_TAIL_TOLERANCE,
        step: float = DEFAULT_LOG_STEP,
    ) -> TimeQuadrature:
        """Build and validate a rule for decay rates in [rate_min, rate_max].

        The truncation points come from the incomplete Gamma function: the discarded
        parts of int t^{2 delta - 1} e^{-r t} dt are below `tol` relative to Gamma(2 delta) r^{-2 delta}
        for every pair rate r in [2 rate_min, 2 rate_max].
        """
        if not exponent > 0:
            raise ParameterError(f"Time weight exponent must be positive, got {exponent}")
        if not 0 < rate_min <= rate_max:
            raise ParameterError(f"Invalid rate range [{rate_min}, {rate_max}]")
        t_lo = gammaincinv(2 * exponent, tol) / (2 * rate_max)
        t_hi = gammainccinv(2 * exponent, tol) / (2 * rate_min)
        s_lo, s_hi = np.log(t_lo), np.log(t_hi)
        match scheme:
            case Scheme.SPLIT_LOG:
                s = np.arange(s_lo, s_hi + step, step)
                t = np.exp(s)
                w = np.full(t.shape, step)
            case Scheme.LAGUERRE_TAIL:
                t, w = cls._laguerre_tail(s_lo, rate_min)
            case _:
                raise ParameterError(f"Unknown time quadrature scheme {scheme}")
        panel = t <= 1
        tq = cls(
            scheme=scheme,
            exponent=exponent,
            rate_min=rate_min,
            rate_max=rate_max,
            panel_nodes=t[panel],
            panel_weights=w[panel],
            tail_nodes=t[~panel],
            tail_weights=w[~panel],
        )
        error = validate_time_quadrature(tq)
        _log.debug(
            "Time quadrature %s delta=%g rates=[%g, %g]: %d nodes, validation error %.3g",
            scheme, exponent, rate_min, rate_max, tq.size, error,
        )
        if not error <= VALIDATION_TOLERANCE:
            raise ConvergenceError(
                f"{scheme} time quadrature misses the Gamma integral by {error:.3g} for rates [{rate_min}, {rate_max}]"
            )
        return tq

    @staticmethod
    def _laguerre_tail(s_lo: float, rate_min: float, panel_nodes: int = 16, tail_nodes: int = 96):
        # Gauss-Legendre panels of unit width in s = log t on [s_lo, 0]
        x, w = roots_legendre(panel_nodes)
        edges = np.arange(min(s_lo, -1.0), 0.0, 1.0)
        edges = np.append(edges, 0.0)
        ts, ws = [], []
        for a, b in zip(edges[:-1], edges[1:]):
            half = (b - a) / 2
            ts.append(np.exp(a + half * (x + 1)))
            ws.append(half * w)
        # Gauss-Laguerre in t = 1 + x / kappa on [1, inf)
        kappa = 2 * rate_min
        xl, wl = roots_laguerre(tail_nodes)
        with np.errstate(divide="ignore"):
            wl = np.exp(np.log(wl) + xl)
        tt = 1 + xl / kappa
        ts.append(tt)
        ws.append(wl / kappa / tt)
        return np.concatenate(ts), np.concatenate(ws)

    @classmethod
    def for_params(
        cls,
        params: ParameterPair,
        exponent: float,
        n_terms: int,
        shift: float = 0.0,
        scheme: Scheme = Scheme.SPLIT_LOG,
    ) -> TimeQuadrature:
        """Rule sized for the rates of the first n_terms modes of the (shifted) semigroup."""
        r = rates(params, n_terms, shift)
        r = r[r > 0]
        if r.size == 0:
            r = np.array([1.0])
        return cls.build(exponent, float(r.min()), float(r.max()), scheme)


def validate_time_quadrature(tq: TimeQuadrature, rate_grid: np.ndarray | None = None) -> float:
    """Max relative error of the rule on int t^{2 delta - 1} e^{-2 t mu} dt = Gamma(2 delta) / (2 mu)^{2 delta}."""
    if rate_grid is None:
        rate_grid = np.geomspace(tq.rate_min, tq.rate_max, 9)
    rate_grid = np.asarray(rate_grid, dtype=float)
    delta = tq.exponent
    approx = np.exp(-2 * np.outer(rate_grid, tq.nodes)) @ tq.density_weights
    exact = gamma_fn(2 * delta) / (2 * rate_grid) ** (2 * delta)
    return float(np.max(np.abs(approx - exact) / exact))
