import numpy as np
import pytest
from scipy.special import eval_jacobi

from jacharm.core import (
    eigenvalue,
    eigenvalues,
    growth_bound_ratio,
    jacobi_polynomial,
    jacobi_polynomial_derivative,
    normalized_chunks,
    normalized_polynomial_derivative_table,
    normalized_table,
    phi,
    phi_table,
)
from jacharm.exceptions import DomainError, ParameterError
from jacharm.model import ParameterPair
from jacharm.testing import assert_rel_close


@pytest.mark.parametrize("n", [0, 1, 2, 7, 20])
def test_jacobi_polynomial_matches_scipy(param_pair, n):
    # Given: points spread over [-1, 1]
    x = np.linspace(-0.95, 0.95, 9)
    # When: the recurrence evaluates P_n
    values = jacobi_polynomial(n, param_pair, x)
    # Then: it agrees with the reference implementation
    expected = eval_jacobi(n, param_pair.alpha, param_pair.beta, x)
    np.testing.assert_allclose(values, expected, rtol=1e-10, atol=1e-9)


def test_jacobi_derivative_is_shifted_polynomial():
    params = ParameterPair(alpha=0.3, beta=-0.4)
    x = np.linspace(-0.9, 0.9, 7)
    h = 1e-6
    # When: derivative formula and central difference are compared
    exact = jacobi_polynomial_derivative(5, params, x)
    numeric = (jacobi_polynomial(5, params, x + h) - jacobi_polynomial(5, params, x - h)) / (2 * h)
    # Then
    np.testing.assert_allclose(exact, numeric, rtol=1e-6)
    # And: derivatives above the degree vanish
    assert np.all(jacobi_polynomial_derivative(2, params, x, k=3) == 0)


def test_negative_degree_is_rejected():
    with pytest.raises(ParameterError):
        jacobi_polynomial(-1, ParameterPair(alpha=0, beta=0), 0.5)


def test_phi_below_zero_index_vanishes():
    params = ParameterPair(alpha=0.0, beta=0.0)
    assert phi(-1, params, 1.0) == 0.0
    assert np.all(phi(-3, params, np.array([0.5, 1.5])) == 0)


def test_phi_scalar_in_scalar_out():
    params = ParameterPair(alpha=0.5, beta=0.5)
    value = phi(2, params, 1.0)
    assert np.ndim(value) == 0
    assert value == pytest.approx(phi_table(3, params, np.array([1.0]))[2, 0])


@pytest.mark.parametrize("theta", [0.0, np.pi, -0.1, 4.0])
def test_phi_outside_open_interval_raises(theta):
    with pytest.raises(DomainError):
        phi(1, ParameterPair(alpha=0, beta=0), theta)


def test_eigenvalues():
    # Given: the Legendre pair, A = 1/2
    params = ParameterPair(alpha=0.0, beta=0.0)
    assert eigenvalue(3, params) == pytest.approx(12.25)
    np.testing.assert_allclose(eigenvalues(4, params), [0.25, 2.25, 6.25, 12.25])
    # And: the singular pair has a zero bottom eigenvalue
    singular = ParameterPair(alpha=-0.5, beta=-0.5)
    assert singular.singular
    assert eigenvalue(0, singular) == 0.0


def test_parameters_must_exceed_minus_one():
    with pytest.raises(ParameterError):
        ParameterPair(alpha=-1.0, beta=0.0)
    with pytest.raises(ParameterError):
        ParameterPair(alpha=0.0, beta=float("nan"))


def test_chunked_table_matches_full_table(param_pair):
    # Given: a grid and a chunk size that does not divide the number of rows
    theta = np.linspace(0.1, 3.0, 11)
    # When
    chunks = list(normalized_chunks(10, param_pair, theta, chunk=3))
    derivative_chunks = list(normalized_chunks(10, param_pair, theta, chunk=3, derivative=True))
    # Then: the streamed rows equal the full tables
    assert [start for start, _ in chunks] == [0, 3, 6, 9]
    assert_rel_close(np.concatenate([b for _, b in chunks]), normalized_table(10, param_pair, theta), rel=1e-12)
    np.testing.assert_allclose(
        np.concatenate([b for _, b in derivative_chunks]),
        normalized_polynomial_derivative_table(10, param_pair, theta),
        rtol=1e-12,
        atol=1e-14,
    )


def test_growth_bound_ratio_is_moderate(param_pair):
    theta = np.linspace(0.01, np.pi - 0.01, 101)
    ratio = growth_bound_ratio(param_pair, 60, theta)
    assert np.isfinite(ratio)
    assert 0 < ratio < 10
