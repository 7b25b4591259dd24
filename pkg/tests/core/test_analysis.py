import numpy as np
import pytest

from jacharm.core import fourier_coeffs, grid_function, normalized_polynomial, polynomial_coeffs, quadrature_rule, synthesize
from jacharm.exceptions import ParameterError, ParameterMismatchError, ResolutionError
from jacharm.model import Basis, Expansion, GridFunction, Measure, ParameterPair


def test_analysis_inverts_synthesis(param_pair, random_expansion):
    # Given: a random expansion with 10 terms
    e = random_expansion(param_pair, 10, seed=3)
    rule = quadrature_rule(16, param_pair)
    # When: its synthesis is analysed again
    again = fourier_coeffs(lambda t: synthesize(e, t), 10, param_pair, rule)
    # Then: the coefficients come back
    np.testing.assert_allclose(again.coeffs, e.coeffs, atol=1e-12)


def test_analysis_of_grid_function(random_expansion):
    params = ParameterPair(alpha=1.0, beta=0.5)
    e = random_expansion(params, 6)
    rule = quadrature_rule(8, params)
    # When: analysed from samples instead of a callable
    again = fourier_coeffs(grid_function(e, rule), 6, params, rule)
    # Then
    np.testing.assert_allclose(again.coeffs, e.coeffs, atol=1e-12)


def test_grid_function_must_use_rule_nodes():
    params = ParameterPair(alpha=0.0, beta=0.0)
    rule = quadrature_rule(8, params)
    f = GridFunction(nodes=rule.nodes * 0.9, values=np.ones(8))
    with pytest.raises(ParameterError):
        fourier_coeffs(f, 4, params, rule)


def test_analysis_rejects_bad_requests():
    params = ParameterPair(alpha=0.0, beta=0.0)
    with pytest.raises(ResolutionError):
        fourier_coeffs(np.cos, 20, params, quadrature_rule(10, params))
    with pytest.raises(ParameterError):
        fourier_coeffs(np.cos, 4, params, quadrature_rule(10, params, Measure.JACOBI))


def test_analysis_rejects_rule_of_another_pair():
    # Given: a rule built for (0, 0)
    rule = quadrature_rule(16, ParameterPair(alpha=0.0, beta=0.0))
    # Then: analysing over (1, 0.5) with it is refused
    with pytest.raises(ParameterMismatchError):
        fourier_coeffs(np.cos, 4, ParameterPair(alpha=1.0, beta=0.5), rule)


def test_polynomial_coefficients_of_basis_polynomial():
    # Given: F = c_2 P_2(cos theta), the third orthonormal polynomial
    params = ParameterPair(alpha=0.5, beta=0.0)
    rule = quadrature_rule(10, params, Measure.JACOBI)
    # When
    e = polynomial_coeffs(lambda t: normalized_polynomial(2, params, t), 5, params, rule)
    # Then: the coefficient vector is e_2 in the polynomial basis
    assert e.basis == Basis.POLYNOMIAL
    np.testing.assert_allclose(e.coeffs, [0, 0, 1, 0, 0], atol=1e-12)
    assert synthesize(e, 1.0).real == pytest.approx(normalized_polynomial(2, params, 1.0))


def test_expansion_record_keeps_complex_coefficients():
    params = ParameterPair(alpha=0.0, beta=2.0)
    e = Expansion(params=params, coeffs=[1.0, 2j, -0.5])
    # When: written as a JSON record and read back
    record = e.to_record()
    # Then
    assert record["coeffs"][1] == {"re": 0.0, "im": 2.0}
    assert Expansion.from_record(record) == e


def test_expansion_rejects_empty_or_infinite():
    params = ParameterPair(alpha=0.0, beta=0.0)
    with pytest.raises(ParameterError):
        Expansion(params=params, coeffs=[])
    with pytest.raises(ParameterError):
        Expansion(params=params, coeffs=[1.0, np.inf])
