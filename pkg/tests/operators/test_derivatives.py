import numpy as np
import pytest

from jacharm.exceptions import ParameterError
from jacharm.helpers import interior_grid
from jacharm.model import Expansion, ParameterPair
from jacharm.operators import (
    apply_multiplier,
    derivative_D,
    derivative_identity_error,
    higher_derivative,
    higher_derivative_multiplier,
    riesz_transform,
    riesz_transform_multiplier,
)


def test_derivative_of_single_mode():
    # Given: phi_3 for a pair with alpha + beta + 1 = 2
    params = ParameterPair(alpha=0.25, beta=0.75)
    # When
    out = derivative_D(Expansion.unit(params, 3))
    # Then: D phi_3 = -sqrt(3 * 5) phi_2 over the shifted pair
    assert out.params == ParameterPair(alpha=1.25, beta=1.75)
    np.testing.assert_allclose(out.coeffs, [0, 0, -np.sqrt(15)])


def test_iterated_derivative_matches_closed_form(param_pair, random_expansion):
    e = random_expansion(param_pair, 9, seed=1)
    stepped = higher_derivative(e, 3)
    closed = apply_multiplier(e, higher_derivative_multiplier(param_pair, 3))
    assert stepped.params == closed.params == param_pair.shifted(3)
    np.testing.assert_allclose(stepped.coeffs, closed.coeffs, rtol=1e-12, atol=1e-12)


def test_derivative_order_must_be_positive(random_expansion):
    e = random_expansion(ParameterPair(alpha=0, beta=0), 3)
    with pytest.raises(ParameterError):
        higher_derivative(e, 0)


def test_spectral_derivative_matches_differential_operator(random_expansion):
    # Given: a smooth expansion and interior points away from the endpoints
    e = random_expansion(ParameterPair(alpha=0.3, beta=-0.2), 8, seed=5)
    theta = interior_grid(40, 0.1)
    # Then: the coefficient-level D agrees with the differential expression
    assert derivative_identity_error(e, theta) < 1e-6


def test_riesz_transform_uses_bessel_on_singular_pair(random_expansion):
    # Given: alpha + beta = -1, where L^{-1/2} does not exist
    singular = ParameterPair(alpha=-0.25, beta=-0.75)
    m = riesz_transform_multiplier(singular, 1)
    n = np.arange(1, 6)
    lam = (n + singular.a) ** 2
    # Then: R phi_n = -sqrt(lambda_n) / sqrt(1 + lambda_n) phi_{n-1}
    np.testing.assert_allclose(m.values(n), -np.sqrt(n * n) / np.sqrt(1 + lam))
    assert "(1+L)" in m.name


def test_riesz_transform_is_bounded_on_modes():
    params = ParameterPair(alpha=1.0, beta=0.0)
    # Then: |R phi_n| <= 1 on every mode
    for n in range(1, 30):
        out = riesz_transform(Expansion.unit(params, n), 1)
        assert np.max(np.abs(out.coeffs)) <= 1.0 + 1e-12
