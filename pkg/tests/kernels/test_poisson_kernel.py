import math

import numpy as np
import pytest

from jacharm.core.quadrature import quadrature_rule
from jacharm.exceptions import DomainError, ParameterError, ResolutionError
from jacharm.kernels import (
    DEFAULT_T_FLOOR,
    HomogeneousSpace,
    cosine_poisson_kernel,
    discarded_tail,
    poisson_kernel_poly,
    truncation_order,
)
from jacharm.kernels.poisson_kernel import check_off_diagonal
from jacharm.model import Measure, ParameterPair

CHEBYSHEV = ParameterPair(alpha=-0.5, beta=-0.5)


@pytest.mark.parametrize("t", [0.05, 0.5, 2.0])
def test_series_matches_closed_form_for_chebyshev_pair(t):
    space = HomogeneousSpace(params=CHEBYSHEV)
    theta = np.array([0.3, 1.1, 2.0, 2.9])
    phi = np.array([0.7, 1.0, 0.4, 2.5])
    # When: the kernel series is summed up to its truncation order
    series = poisson_kernel_poly(space, t, theta, phi)
    # Then: it reproduces the geometric-series closed form
    np.testing.assert_allclose(series, cosine_poisson_kernel(t, theta, phi), rtol=1e-9)


def test_kernel_reproduces_bottom_mode(param_pair):
    space = HomogeneousSpace(params=param_pair)
    rule = quadrature_rule(256, param_pair, Measure.JACOBI)
    t = 1.0
    # When: H_t(theta, .) is integrated against d mu
    values = poisson_kernel_poly(space, t, 1.2, rule.nodes)
    # Then: only the P_0 term survives, leaving e^{-t A}
    assert rule.weights @ values == pytest.approx(math.exp(-t * param_pair.a), rel=1e-9)


def test_kernel_is_symmetric():
    space = HomogeneousSpace(params=ParameterPair(alpha=0.5, beta=-0.25))
    theta, phi = np.array([0.2, 1.4]), np.array([2.2, 0.9])
    np.testing.assert_allclose(
        poisson_kernel_poly(space, 0.3, theta, phi), poisson_kernel_poly(space, 0.3, phi, theta), rtol=1e-12
    )


def test_truncation_grows_as_t_shrinks():
    params = ParameterPair(alpha=0.0, beta=0.0)
    orders = [truncation_order(params, t) for t in (1.0, 0.1, 0.01)]
    # Then: N(t) ~ C / t
    assert orders[0] < orders[1] < orders[2]
    assert orders[2] / orders[1] > 5


def test_discarded_tail_below_tolerance():
    params = ParameterPair(alpha=1.0, beta=0.5)
    n_terms = truncation_order(params, 0.2, gamma=1.5, tol=1e-12)
    # Then: the geometric tail after N(t) is of the size of the tolerance
    assert discarded_tail(params, 0.2, n_terms, gamma=1.5) < 1e-10


def test_truncation_refuses_small_or_negative_times():
    params = ParameterPair(alpha=0.0, beta=0.0)
    with pytest.raises(ParameterError):
        truncation_order(params, 0.0)
    with pytest.raises(ResolutionError):
        truncation_order(params, DEFAULT_T_FLOOR / 2)
    with pytest.raises(ResolutionError):
        poisson_kernel_poly(HomogeneousSpace(params=params), 1e-3, 1.0, 2.0, t_floor=1e-2)


def test_diagonal_and_endpoint_points_rejected():
    with pytest.raises(DomainError):
        check_off_diagonal(np.array([0.5, 1.0]), np.array([0.7, 1.0]))
    with pytest.raises(DomainError):
        poisson_kernel_poly(HomogeneousSpace(params=CHEBYSHEV), 1.0, 0.0, 1.0)
