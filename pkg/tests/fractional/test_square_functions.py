import numpy as np
import pytest

from jacharm.core import phi
from jacharm.exceptions import ParameterError
from jacharm.fractional import (
    Method,
    composition_error,
    g_fractional,
    g_fractional_k,
    g_tilde,
    isometry_experiment,
    l2_isometry_check,
    mode_independence_spread,
    polarized_isometry_check,
    single_mode_constant,
)
from jacharm.helpers import interior_grid
from jacharm.model import Expansion, ParameterPair


@pytest.mark.parametrize("method", list(Method))
def test_l2_isometry(param_pair, random_expansion, method):
    e = random_expansion(param_pair, 8)
    assert l2_isometry_check(e, 0.75, method=method).rel_err <= 1e-6


def test_polarized_isometry(param_pair, random_expansion):
    e = random_expansion(param_pair, 8, seed=1)
    other = random_expansion(param_pair, 8, seed=2)
    report = polarized_isometry_check(e, other, 1.5, method=Method.GRAM)
    assert report.rel_err <= 1e-6


def test_methods_agree_pointwise(random_expansion):
    e = random_expansion(ParameterPair(alpha=0.5, beta=0.5), 10)
    theta = interior_grid(12, 0.1)
    gram = g_fractional(e, 1.2, theta, method=Method.GRAM)
    quadrature = g_fractional(e, 1.2, theta, method=Method.QUADRATURE)
    np.testing.assert_allclose(quadrature, gram, rtol=1e-6)


@pytest.mark.parametrize("gamma", [0.5, 2.0])
def test_single_mode_ratio_is_mode_independent(gamma):
    assert mode_independence_spread(ParameterPair(alpha=0.0, beta=0.0), gamma, n_max=12, points=16) <= 1e-7


@pytest.mark.parametrize("method", list(Method))
def test_composition_identity(random_expansion, method):
    # Given: gamma < k on a non-singular pair
    e = random_expansion(ParameterPair(alpha=0.5, beta=0.0), 8)
    theta = interior_grid(10, 0.1)
    # Then: g^{gamma,k}(f) = g^{k-gamma}(L^{gamma/2} f) in closed form and through the time quadrature
    assert composition_error(e, 0.5, 2, theta, method) <= 1e-8


def test_orders_are_checked(random_expansion):
    e = random_expansion(ParameterPair(alpha=0.0, beta=0.0), 4)
    with pytest.raises(ParameterError):
        g_fractional(e, 0.0, 1.0)
    with pytest.raises(ParameterError):
        g_fractional_k(e, 2.0, 2, 1.0)


def test_shifted_square_function_of_bottom_mode():
    # Given: phi_0 of the singular pair, invisible to g^gamma but not to the shifted variant
    params = ParameterPair(alpha=-0.5, beta=-0.5)
    e = Expansion.unit(params, 0)
    theta = interior_grid(8, 0.2)
    # Then: the shifted square function is the single-mode constant times |phi_0|
    shifted = g_tilde(e, 0.5, theta, method=Method.GRAM)
    np.testing.assert_allclose(shifted, single_mode_constant(0.5) * np.abs(phi(0, params, theta)), rtol=1e-10)
    assert np.all(g_fractional(e, 0.5, theta, method=Method.GRAM) == 0)


def test_isometry_experiment_passes():
    report = isometry_experiment(ParameterPair(alpha=0.0, beta=0.0), gammas=(0.5, 1.5), samples=2, n_terms=6, k=2)
    assert report.passed is True
    assert report.k == 2
    rows = report.details["gammas"]
    assert [r["gamma"] for r in rows] == [0.5, 1.5]
    assert all("composition_rel_err" in r for r in rows)
    assert all(r["composition_quadrature_rel_err"] <= 1e-8 for r in rows)


def test_singular_pair_skips_composition():
    report = isometry_experiment(ParameterPair(alpha=-0.5, beta=-0.5), gammas=(0.5,), samples=2, n_terms=6)
    assert report.passed is True
    assert "composition_rel_err" not in report.details["gammas"][0]
