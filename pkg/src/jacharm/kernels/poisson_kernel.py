"""The Jacobi-Poisson kernel of the polynomial system, summed directly.

H_t(theta, phi) = sum_n e^{-t mu_n} P_n(theta) P_n(phi), mu_n = sqrt(lambda_n) = n + A,
with P_n the orthonormal polynomials of d mu_{alpha,beta}. Since sup |P_n| grows like
(n+1)^{max(alpha,beta)+1/2} <= (n+1)^{alpha+beta+2}, the terms of any t-differentiated series are dominated by

    (n+1)^{2(alpha+beta+2)} (1 + mu_n)^gamma e^{-t mu_n},

which fixes the truncation N(t) ~ C / t.
"""

import logging
import math
from typing import Iterator, Tuple

import numpy as np

from ..core.polynomials import normalized_chunks
from ..exceptions import DomainError, ParameterError, ResolutionError
from ..helpers import as_theta
from ..model import ParameterPair
from .geometry import HomogeneousSpace

DEFAULT_T_FLOOR = 1e-4
KERNEL_TERMS_CAP = 2_000_000
TAIL_TOLERANCE = 1e-14
CHUNK_TERMS = 2048

_log = logging.getLogger(__name__)


def log_term_bound(params: ParameterPair, n, t: float, gamma: float = 0.0, derivative: bool = False) -> np.ndarray:
    """log of the bound on the n-th term of the kernel series (theta-derivative adds (n+1)^2)."""
    n = np.asarray(n, dtype=float)
    growth = 2 * (params.alpha + params.beta + 2) + (2.0 if derivative else 0.0)
    mu = n + params.a
    return growth * np.log(n + 1) + gamma * np.log1p(mu) - t * mu


def truncation_order(
    params: ParameterPair,
    t: float,
    gamma: float = 0.0,
    tol: float = TAIL_TOLERANCE,
    derivative: bool = False,
    t_floor: float = DEFAULT_T_FLOOR,
) -> int:
    """Number of terms N(t) after which every term bound is below `tol` times the largest one.

    Raises:
        ParameterError: If t is not positive.
        ResolutionError: If t is below `t_floor` or N(t) exceeds KERNEL_TERMS_CAP.
    """
    if not t > 0:
        raise ParameterError(f"Kernel time must be positive, got {t}")
    if t < t_floor:
        raise ResolutionError(f"t={t} is below the kernel floor {t_floor}: the series needs ~{1 / t:.0f}+ terms")

    def bound(n: int) -> float:
        return float(log_term_bound(params, n, t, gamma, derivative))

    growth = 2 * (params.alpha + params.beta + 2) + (2.0 if derivative else 0.0) + gamma
    peak = max(growth / t, 0.0)
    ceiling = max(bound(0), bound(math.floor(peak)), bound(math.ceil(peak)))
    target = ceiling + math.log(tol)
    lo = math.ceil(peak)
    hi = max(lo, 1)
    while bound(hi) > target:
        hi *= 2
        if hi > 2 * KERNEL_TERMS_CAP:
            raise ResolutionError(f"Kernel truncation at t={t} exceeds the cap of {KERNEL_TERMS_CAP} terms")
    while lo < hi:
        mid = (lo + hi) // 2
        if bound(mid) > target:
            lo = mid + 1
        else:
            hi = mid
    n_terms = max(hi, 1)
    if n_terms > KERNEL_TERMS_CAP:
        raise ResolutionError(f"Kernel truncation at t={t} needs {n_terms} terms, cap is {KERNEL_TERMS_CAP}")
    _log.debug("Kernel truncation for %s at t=%g, gamma=%g: %d terms", params, t, gamma, n_terms)
    return n_terms


def discarded_tail(params: ParameterPair, t: float, n_terms: int, gamma: float = 0.0, derivative: bool = False) -> float:
    """Geometric estimate of the discarded tail of the term bounds, relative to the largest term."""
    growth = 2 * (params.alpha + params.beta + 2) + (2.0 if derivative else 0.0) + gamma
    peak = max(growth / t, 0.0)
    n = np.array([0.0, math.floor(peak), math.ceil(peak)])
    ceiling = float(np.max(log_term_bound(params, n, t, gamma, derivative)))
    first, second = log_term_bound(params, [n_terms, n_terms + 1], t, gamma, derivative)
    ratio = math.exp(second - first)
    if ratio >= 1:
        return math.inf
    return math.exp(first - ceiling) / (1 - ratio)


def kernel_points(theta, phi) -> Tuple[np.ndarray, np.ndarray, np.ndarray, Tuple[int, ...]]:
    """Unique nodes of broadcast (theta, phi) pairs and the indices of both coordinates into them."""
    th, ph = np.broadcast_arrays(np.asarray(theta, dtype=float), np.asarray(phi, dtype=float))
    as_theta(th)
    as_theta(ph)
    points, inverse = np.unique(np.concatenate([th.ravel(), ph.ravel()]), return_inverse=True)
    inverse = inverse.ravel()
    return points, inverse[: th.size], inverse[th.size :], th.shape


def series_rows(
    params: ParameterPair,
    n_terms: int,
    points: np.ndarray,
    derivative: bool = False,
    chunk: int = CHUNK_TERMS,
) -> Iterator[Tuple[np.ndarray, np.ndarray, np.ndarray | None]]:
    """Yield (n, P_n(points), d/dtheta P_n(points) or None) chunk by chunk."""
    values = normalized_chunks(n_terms, params, points, chunk)
    slopes = normalized_chunks(n_terms, params, points, chunk, derivative=True) if derivative else None
    for start, rows in values:
        n = np.arange(start, start + len(rows))
        yield n, rows, next(slopes)[1] if slopes is not None else None


def poisson_kernel_poly(
    space: HomogeneousSpace,
    t: float,
    theta,
    phi,
    tol: float = TAIL_TOLERANCE,
    t_floor: float = DEFAULT_T_FLOOR,
):
    """H_t(theta, phi), broadcast over theta and phi."""
    params = space.params
    n_terms = truncation_order(params, t, tol=tol, t_floor=t_floor)
    points, ix, iy, shape = kernel_points(theta, phi)
    acc = np.zeros(ix.size)
    for n, rows, _ in series_rows(params, n_terms, points):
        acc += np.exp(-t * (n + params.a)) @ (rows[:, ix] * rows[:, iy])
    acc = acc.reshape(shape)
    return float(acc) if acc.ndim == 0 else acc


def cosine_poisson_kernel(t: float, theta, phi):
    """Closed form of H_t for alpha = beta = -1/2, where P_0 = 1/sqrt(pi) and P_n = sqrt(2/pi) cos(n theta).

    Uses sum_{n>=1} r^n cos(n x) = (r cos x - r^2) / (1 - 2 r cos x + r^2), r = e^{-t}.
    """
    if not t > 0:
        raise ParameterError(f"Kernel time must be positive, got {t}")
    r = math.exp(-t)

    def series(x):
        c = np.cos(x)
        return (r * c - r * r) / (1 - 2 * r * c + r * r)

    th, ph = np.asarray(theta, dtype=float), np.asarray(phi, dtype=float)
    return (1 + series(th - ph) + series(th + ph)) / np.pi


def check_off_diagonal(theta, phi) -> None:
    th, ph = np.broadcast_arrays(np.asarray(theta, dtype=float), np.asarray(phi, dtype=float))
    if np.any(th == ph):
        raise DomainError("The kernel is singular on the diagonal theta = phi")
