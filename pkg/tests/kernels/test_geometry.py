import numpy as np
import pytest

from jacharm.exceptions import DomainError, ParameterError
from jacharm.kernels import (
    HomogeneousSpace,
    QForm,
    ball_measure,
    comparability_ratios,
    doubling_constant,
    qform_lower_bound,
)
from jacharm.model import ParameterPair


@pytest.fixture
def space(param_pair) -> HomogeneousSpace:
    return HomogeneousSpace(params=param_pair)


def test_cdf_matches_adaptive_quadrature(space):
    # Given: a few subintervals of (0, pi)
    for lo, hi in [(0.0, 0.4), (0.3, 1.7), (2.0, np.pi)]:
        # Then: the incomplete Beta form agrees with direct integration of the density
        expected = space.quad_mass(lo, hi)
        assert space.cdf(hi) - space.cdf(lo) == pytest.approx(expected, rel=1e-7)
    assert space.cdf(np.pi) == pytest.approx(space.total_mass, rel=1e-12)
    assert space.upper_cdf(0.0) == pytest.approx(space.total_mass, rel=1e-12)


def test_ball_measure_covers_whole_interval(space):
    # When: the radius exceeds pi
    value = ball_measure(space, 1.0, 4.0)
    # Then: the ball is all of (0, pi)
    assert value == pytest.approx(space.total_mass, rel=1e-12)


def test_ball_measure_near_upper_endpoint():
    space = HomogeneousSpace(params=ParameterPair(alpha=2.0, beta=-0.9))
    theta, r = np.pi - 1e-3, 5e-4
    # Then: the upper_cdf branch keeps its accuracy where cdf is close to the total mass
    expected = space.quad_mass(theta - r, theta + r)
    assert ball_measure(space, theta, r) == pytest.approx(expected, rel=1e-6)


def test_ball_measure_rejects_bad_input(space):
    with pytest.raises(ParameterError):
        ball_measure(space, 1.0, 0.0)
    with pytest.raises(DomainError):
        ball_measure(space, np.pi, 0.1)


def test_ball_comparability_is_two_sided(space):
    grid = np.linspace(0.05, np.pi - 0.05, 25)
    # When: ball measures are divided by the explicit size model
    lo, hi = comparability_ratios(space, grid)
    # Then: the ratios stay bounded away from 0 and infinity
    assert 0 < lo <= hi < np.inf
    assert hi / lo < 1e4


def test_doubling_constant_is_finite(space):
    grid = np.linspace(0.05, np.pi - 0.05, 15)
    radii = np.geomspace(1e-3, 1.0, 8)
    constant = doubling_constant(space, grid, radii)
    # Then: doubling a ball multiplies its measure by at least 1 and by a bounded factor
    assert 1.0 <= constant < 1e3


def test_qform_bounds_distance_squared():
    grid = np.linspace(0.01, np.pi - 0.01, 40)
    # Then: q(theta, phi, 1, 1) = 2 sin^2((theta - phi) / 4) is comparable to |theta - phi|^2
    assert qform_lower_bound(grid) >= 1 / (2 * np.pi**2)
    assert QForm()(1.0, 1.0) == pytest.approx(0.0, abs=1e-15)
