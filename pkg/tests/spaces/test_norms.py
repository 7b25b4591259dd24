import math

import numpy as np
import pytest

from jacharm.exceptions import InadmissibleExponentsError, ParameterError, ParameterMismatchError
from jacharm.model import Basis, Expansion, GridFunction, Measure, ParameterPair
from jacharm.spaces import PotentialSpaceTag, expansion_lp_norm, lp_norm, potential_norm, sup_norm


def test_grid_norm_with_trapezoid():
    nodes = np.linspace(0.1, np.pi - 0.1, 201)
    g = GridFunction(nodes=nodes, values=np.ones_like(nodes))
    assert lp_norm(g, 1) == pytest.approx(np.pi - 0.2)
    assert lp_norm(g, math.inf) == 1.0
    with pytest.raises(ParameterError):
        lp_norm(g, 0.5)


def test_weighted_grid_needs_weights():
    nodes = np.linspace(0.1, 3.0, 5)
    g = GridFunction(nodes=nodes, values=np.ones(5), measure=Measure.JACOBI)
    with pytest.raises(ParameterError):
        lp_norm(g, 2)


def test_l2_norm_is_parseval(param_pair, random_expansion):
    e = random_expansion(param_pair, 10)
    assert expansion_lp_norm(e, 2) == pytest.approx(e.l2_norm())


def test_polynomial_basis_l2_norm_on_jacobi_measure(random_expansion):
    params = ParameterPair(alpha=0.5, beta=1.5)
    e = random_expansion(params, 8).in_basis(Basis.POLYNOMIAL)
    # Then: the factored quadrature reproduces Parseval in L^2(d mu)
    assert expansion_lp_norm(e, 2, Measure.JACOBI) == pytest.approx(e.l2_norm(), rel=1e-10)


def test_sup_norm_of_cosine_mode():
    e = Expansion.unit(ParameterPair(alpha=-0.5, beta=-0.5), 1)
    assert sup_norm(e) == pytest.approx(np.sqrt(2 / np.pi), rel=1e-9)


def test_lp_norm_beyond_exponent_range():
    e = Expansion.unit(ParameterPair(alpha=-0.75, beta=1 / 3), 2)
    assert np.isfinite(expansion_lp_norm(e, 3.5))
    with pytest.raises(InadmissibleExponentsError):
        expansion_lp_norm(e, 5.0)


def test_potential_norm_for_p_two(random_expansion):
    # Given: ||f||_{L^{2,s}} = (sum lambda_n^s |a_n|^2)^{1/2}
    params = ParameterPair(alpha=0.0, beta=0.0)
    e = random_expansion(params, 6)
    tag = PotentialSpaceTag(params=params, p=2.0, s=1.5)
    lam = (np.arange(6) + 0.5) ** 2
    expected = np.sqrt(np.sum(lam**1.5 * np.abs(e.coeffs) ** 2))
    assert potential_norm(e, tag) == pytest.approx(expected, rel=1e-12)


def test_potential_norm_needs_matching_pair(random_expansion):
    e = random_expansion(ParameterPair(alpha=1.0, beta=0.0), 4)
    tag = PotentialSpaceTag(params=ParameterPair(alpha=0.0, beta=0.0), p=2.0, s=1.0)
    with pytest.raises(ParameterMismatchError):
        potential_norm(e, tag)
