import numpy as np
import pytest

from jacharm.exceptions import ParameterError
from jacharm.helpers import interior_grid
from jacharm.model import Expansion, ParameterPair
from jacharm.operators import contraction_excess, maximal_defect, poisson, poisson_maximal, refined_times, semigroup_law_error


def test_semigroup_law(param_pair, random_expansion):
    e = random_expansion(param_pair, 12)
    assert semigroup_law_error(e, 0.3, 1.1) <= 1e-12


def test_semigroup_is_contraction(param_pair, random_expansion):
    e = random_expansion(param_pair, 12, seed=2)
    assert contraction_excess(e, 0.5) <= 1e-14


def test_time_zero_is_identity(random_expansion):
    e = random_expansion(ParameterPair(alpha=0, beta=0), 4)
    assert poisson(e, 0.0) is e


def test_negative_time_is_rejected(random_expansion):
    e = random_expansion(ParameterPair(alpha=0, beta=0), 4)
    with pytest.raises(ParameterError):
        poisson(e, -0.1)
    with pytest.raises(ParameterError):
        poisson_maximal(e, 1.0, [0.1, -1.0])


def test_singular_pair_keeps_bottom_mode():
    # Given: alpha + beta = -1, lambda_0 = 0
    params = ParameterPair(alpha=-0.5, beta=-0.5)
    # Then: H_t phi_0 = phi_0 for every t
    out = poisson(Expansion.unit(params, 0, size=2), 5.0)
    np.testing.assert_allclose(out.coeffs, [1.0, 0.0])


def peaked_expansion() -> Expansion:
    # H_t f(pi / 3) = e^{-t} - e^{-2t}: zero at t = 0, peak 1/4 at t = log 2
    return Expansion(params=ParameterPair(alpha=-0.5, beta=-0.5), coeffs=[0.0, np.sqrt(2 * np.pi), np.sqrt(2 * np.pi)])


def test_refined_times():
    np.testing.assert_allclose(refined_times([1.0, 2.0], refine=2), [0.0, 0.5, 1.0, 1.5, 2.0])


def test_maximal_function_of_peaked_expansion():
    e = peaked_expansion()
    theta = np.array([np.pi / 3])
    np.testing.assert_allclose(poisson_maximal(e, theta, [np.log(2)]), 0.25, rtol=1e-12)


def test_coarse_times_miss_the_maximal_peak():
    # Given: times straddling the peak at log 2
    e = peaked_expansion()
    theta = np.array([np.pi / 3])
    # Then: refinement finds a much larger supremum
    assert maximal_defect(e, theta, [0.05, 5.0]) > 0.5
    # And: a fine geometric grid resolves it
    assert maximal_defect(e, theta, np.geomspace(1e-3, 5.0, 200)) < 1e-3


def test_maximal_defect_rejects_bad_grids(random_expansion):
    e = random_expansion(ParameterPair(alpha=0.5, beta=0.0), 10)
    theta = interior_grid(16, 0.05)
    with pytest.raises(ParameterError):
        maximal_defect(e, theta, [])
    with pytest.raises(ParameterError):
        maximal_defect(e, theta, [0.1], refine=0)
