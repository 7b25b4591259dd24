"""Caputo fractional derivatives in t of Poisson integrals.

For order gamma > 0 and m = floor(gamma) + 1 the derivative is

    d_t^gamma F(t) = 1/Gamma(m - gamma) int_0^inf F^(m)(t + s) s^{m - gamma - 1} ds.

Applied to exp(-mu t) this gives (-1)^m mu^gamma exp(-mu t); in particular an integer
order k yields -d^k/dt^k.
"""

import logging
import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Protocol

import numpy as np
from scipy.integrate import IntegrationWarning, quad
from scipy.special import gamma as gamma_fn

from ..core.analysis import basis_table
from ..exceptions import ConvergenceError, ParameterError
from ..helpers import as_theta, unwrap
from ..model import Expansion
from .time_quadrature import rates

TAIL_CUTOFF = 1e-14
MAX_TAIL_DOUBLINGS = 60

_log = logging.getLogger(__name__)


def caputo_order(gamma: float) -> int:
    """m = floor(gamma) + 1."""
    if not gamma > 0:
        raise ParameterError(f"Fractional order must be positive, got {gamma}")
    return math.floor(gamma) + 1


class TimeFunction(Protocol):
    """Smooth function of t > 0 with explicit integer derivatives."""

    def derivative(self, order: int, t: np.ndarray) -> np.ndarray: ...


@dataclass(frozen=True)
class Exponential:
    """amplitude * exp(-rate t)"""

    rate: float
    amplitude: float = 1.0

    def derivative(self, order: int, t: np.ndarray) -> np.ndarray:
        return self.amplitude * (-self.rate) ** order * np.exp(-self.rate * np.asarray(t))


@dataclass(frozen=True)
class PoissonTrace:
    """t -> e^{-shift t} H_t f(theta) at a fixed theta."""

    expansion: Expansion
    theta: float
    shift: float = 0.0

    @cached_property
    def _modes(self) -> tuple[np.ndarray, np.ndarray]:
        e = self.expansion
        mu = rates(e.params, e.size, self.shift)
        c = e.coeffs * basis_table(e.size, e.params, np.array([self.theta]), e.basis)[:, 0]
        return mu, c

    def derivative(self, order: int, t: np.ndarray) -> np.ndarray:
        mu, c = self._modes
        kernel = (-mu) ** order * np.exp(-np.multiply.outer(np.asarray(t, dtype=float), mu))
        return kernel @ c


def caputo_poisson(e: Expansion, gamma: float, t: float, theta, shift: float = 0.0):
    """Closed form (-1)^m sum mu_n^gamma e^{-t mu_n} a_n phi_n(theta), mu_n = sqrt(lambda_n) + shift."""
    m = caputo_order(gamma)
    if not t > 0:
        raise ParameterError(f"Caputo derivative needs t > 0, got {t}")
    th, scalar = as_theta(theta)
    mu = rates(e.params, e.size, shift)
    weights = (-1) ** m * mu**gamma * np.exp(-t * mu) * e.coeffs
    return unwrap(weights @ basis_table(e.size, e.params, th, e.basis), scalar)


def _quad(f, a: float, b: float, epsabs: float) -> float:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        value, abserr = quad(f, a, b, limit=400, epsabs=epsabs, epsrel=1e-12)
    if not abserr <= max(1e-9 * abs(value), 100 * epsabs):
        raise ConvergenceError(f"Quadrature on [{a}, {b}] did not converge (error estimate {abserr:.3g})")
    return value


def _quad_complex(f, a: float, b: float, is_complex: bool, epsabs: float) -> complex:
    if not is_complex:
        return _quad(lambda x: float(np.real(f(x))), a, b, epsabs)
    return complex(
        _quad(lambda x: float(np.real(f(x))), a, b, epsabs),
        _quad(lambda x: float(np.imag(f(x))), a, b, epsabs),
    )


def _tail_end(g, peak: float, cutoff: float) -> float:
    end = 1.0
    for _ in range(MAX_TAIL_DOUBLINGS):
        tail_points = end * np.array([1.0, 1.25, 1.5, 1.75, 2.0])
        if np.max(np.abs(g(tail_points))) <= cutoff * peak:
            return 2 * end
        end *= 2
    raise ConvergenceError("Caputo integrand does not decay: the tail integral is not convergent")


def caputo_numeric(F: TimeFunction, gamma: float, t: float, cutoff: float = TAIL_CUTOFF):
    """Quadrature of the Caputo integral, the independent check of caputo_poisson.

    On [0, 1] the substitution s = u^{1/(m-gamma)} removes the s^{m-gamma-1} singularity;
    beyond 1 the integral is split into dyadic panels up to the point where
    the integrand falls below `cutoff` times its peak.
    """
    m = caputo_order(gamma)
    if not t > 0:
        raise ParameterError(f"Caputo derivative needs t > 0, got {t}")
    nu = m - gamma

    def g(s):
        return F.derivative(m, t + np.asarray(s, dtype=float))

    sample = g(np.linspace(0.0, 1.0, 33))
    is_complex = bool(np.any(np.imag(sample) != 0))
    peak = float(np.max(np.abs(sample)))
    if peak == 0:
        return 0.0
    head = _quad_complex(lambda u: g(np.array([u ** (1 / nu)]))[0], 0.0, 1.0, is_complex, 1e-15 * peak) / nu
    end = _tail_end(g, peak, cutoff)
    tail = 0.0
    a = 1.0
    while a < end:
        b = min(2 * a, end)
        tail += _quad_complex(lambda s: g(np.array([s]))[0] * s ** (nu - 1), a, b, is_complex, 1e-15 * peak)
        a = b
    _log.debug("Caputo integral gamma=%g t=%g: head %.6g, tail up to %g: %.6g", gamma, t, abs(head), end, abs(tail))
    value = (head + tail) / gamma_fn(nu)
    return value if is_complex else float(np.real(value))
