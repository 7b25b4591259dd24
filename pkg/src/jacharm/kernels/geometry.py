"""The space of homogeneous type ((0, pi), d mu_{alpha,beta}, |.|)."""

import logging
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.integrate import quad
from scipy.special import betainc, betaln

from ..core.polynomials import mu_density
from ..exceptions import ParameterError
from ..helpers import as_theta
from ..model import ParameterPair

_log = logging.getLogger(__name__)


class HomogeneousSpace(BaseModel):
    """(0, pi) with the measure d mu_{alpha,beta} and the Euclidean distance.

    With u = sin^2(theta/2) the measure becomes u^alpha (1-u)^beta du, so the
    distribution function is an incomplete Beta function.
    """

    model_config = ConfigDict(frozen=True)

    params: ParameterPair

    def density(self, theta):
        return mu_density(theta, self.params)

    @property
    def total_mass(self) -> float:
        return float(np.exp(betaln(self.params.alpha + 1, self.params.beta + 1)))

    def cdf(self, theta) -> np.ndarray:
        """mu((0, theta)) for theta in [0, pi]."""
        t = np.clip(np.asarray(theta, dtype=float), 0.0, np.pi)
        return self.total_mass * betainc(self.params.alpha + 1, self.params.beta + 1, np.sin(t / 2) ** 2)

    def upper_cdf(self, theta) -> np.ndarray:
        """mu((theta, pi)), accurate where `cdf` is close to the total mass."""
        t = np.clip(np.asarray(theta, dtype=float), 0.0, np.pi)
        return self.total_mass * betainc(self.params.beta + 1, self.params.alpha + 1, np.cos(t / 2) ** 2)

    def quad_mass(self, lo: float, hi: float) -> float:
        """mu((lo, hi)) by adaptive quadrature, the independent check of `cdf`."""
        lo, hi = max(lo, 0.0), min(hi, np.pi)
        if hi <= lo:
            return 0.0
        a, b = 2 * self.params.alpha + 1, 2 * self.params.beta + 1
        value, _ = quad(lambda t: np.sin(t / 2) ** a * np.cos(t / 2) ** b, lo, hi, limit=200)
        return float(value)


def ball_measure(space: HomogeneousSpace, theta, r):
    """mu(B(theta, r) intersected with (0, pi))."""
    as_theta(theta)
    t = np.asarray(theta, dtype=float)
    radius = np.asarray(r, dtype=float)
    if not np.all(radius > 0):
        raise ParameterError(f"Ball radius must be positive, got {r}")
    value = np.where(
        t <= np.pi / 2,
        space.cdf(t + radius) - space.cdf(t - radius),
        space.upper_cdf(t - radius) - space.upper_cdf(t + radius),
    )
    return float(value) if value.ndim == 0 else value


def comparability_model(space: HomogeneousSpace, theta, phi):
    """|theta-phi| (theta+phi)^{2 alpha+1} (2 pi - theta - phi)^{2 beta+1}, the size of mu(B(theta, |theta-phi|))."""
    th, ph = np.asarray(theta, dtype=float), np.asarray(phi, dtype=float)
    alpha, beta = space.params.alpha, space.params.beta
    return np.abs(th - ph) * (th + ph) ** (2 * alpha + 1) * (2 * np.pi - th - ph) ** (2 * beta + 1)


def pair_grid(grid: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """All ordered off-diagonal pairs (theta_i, theta_j) of a grid."""
    th, ph = np.meshgrid(grid, grid, indexing="ij")
    off = th != ph
    return th[off], ph[off]


def comparability_ratios(space: HomogeneousSpace, grid: np.ndarray) -> Tuple[float, float]:
    """(min, max) over off-diagonal grid pairs of mu(B(theta, |theta-phi|)) / comparability_model."""
    th, ph = pair_grid(np.asarray(grid, dtype=float))
    ratios = ball_measure(space, th, np.abs(th - ph)) / comparability_model(space, th, ph)
    _log.debug("Ball comparability ratios for %s: [%.4g, %.4g]", space.params, ratios.min(), ratios.max())
    return float(ratios.min()), float(ratios.max())


def doubling_constant(space: HomogeneousSpace, grid: np.ndarray, radii: np.ndarray) -> float:
    """sup over the grid and radii of mu(B(theta, 2r)) / mu(B(theta, r))."""
    th, rr = np.meshgrid(np.asarray(grid, dtype=float), np.asarray(radii, dtype=float), indexing="ij")
    ratio = ball_measure(space, th.ravel(), 2 * rr.ravel()) / ball_measure(space, th.ravel(), rr.ravel())
    return float(np.max(ratio))


class QForm:
    """q(theta, phi, u, v) = 1 - u sin(theta/2) sin(phi/2) - v cos(theta/2) cos(phi/2)."""

    def __call__(self, theta, phi, u=1.0, v=1.0):
        th, ph = np.asarray(theta, dtype=float), np.asarray(phi, dtype=float)
        return 1 - u * np.sin(th / 2) * np.sin(ph / 2) - v * np.cos(th / 2) * np.cos(ph / 2)


def qform_lower_bound(grid: np.ndarray) -> float:
    """inf over off-diagonal grid pairs of q(theta, phi, 1, 1) / |theta - phi|^2."""
    th, ph = pair_grid(np.asarray(grid, dtype=float))
    return float(np.min(QForm()(th, ph) / (th - ph) ** 2))
