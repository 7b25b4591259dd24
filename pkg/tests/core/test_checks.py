import numpy as np
import pytest

from jacharm.core import (
    cosine_degeneration_error,
    expansion_experiment,
    fourier_coeffs,
    orthonormality_error,
    quadrature_rule,
    round_trip_residual,
)
from jacharm.model import ParameterPair


def test_orthonormal_up_to_forty(param_pair):
    assert orthonormality_error(param_pair, 40) <= 1e-10


def test_cosine_pair_degenerates_to_cosines():
    assert cosine_degeneration_error(40) <= 1e-12


def test_round_trip_residual_decreases_with_truncation():
    # Given: a smooth function vanishing at both ends
    params = ParameterPair(alpha=0.0, beta=0.0)
    rule = quadrature_rule(96, params)

    def bump(t):
        return t * (np.pi - t)

    # When
    coarse = round_trip_residual(bump, fourier_coeffs(bump, 4, params, rule), rule)
    fine = round_trip_residual(bump, fourier_coeffs(bump, 32, params, rule), rule)
    # Then
    assert fine < coarse


def test_expansion_experiment_report():
    params = ParameterPair(alpha=-0.5, beta=-0.5)
    # When
    report = expansion_experiment(np.cos, params, 16, name="cosine")
    # Then: the exactness checks pass and the record is attached
    assert report.passed is True
    assert report.experiment == "expand"
    assert report.details["function"] == "cosine"
    assert report.details["resolution"] == 96
    assert len(report.details["expansion"]["coeffs"]) == 16
    assert report.details["coefficient_error"] <= 1e-10
    # And: cos is phi_1 up to a constant, so the residual is tiny
    assert report.details["round_trip_residual"] == pytest.approx(0.0, abs=1e-10)
