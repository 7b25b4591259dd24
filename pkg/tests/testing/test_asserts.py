import os

import numpy as np
import pytest

from jacharm.model import ExperimentReport, ParameterPair
from jacharm.testing import assert_passed, assert_rel_close


def test_rel_close_reports_worst_index():
    assert_rel_close([1.0, 2.0], [1.0, 2.0 + 1e-12])
    with pytest.raises(AssertionError, match="at index 1"):
        assert_rel_close(np.array([1.0, 2.1]), np.array([1.0, 2.0]), rel=1e-3, what="norms")
    with pytest.raises(AssertionError, match="shape"):
        assert_rel_close([1.0], [1.0, 2.0])


def test_passed_report():
    params = ParameterPair(alpha=0.0, beta=0.0)
    assert_passed(ExperimentReport(experiment="expand", params=params, passed=True))
    # Then: exploratory runs are not a pass
    with pytest.raises(AssertionError, match="expand"):
        assert_passed(ExperimentReport(experiment="expand", params=params, passed=None))


def test_random_expansion_fixture(random_expansion, param_pair):
    # When: the factory is called twice with one seed
    first = random_expansion(param_pair, n_terms=5, seed=2)
    second = random_expansion(param_pair, n_terms=5, seed=2)
    # Then: the coefficients repeat
    np.testing.assert_array_equal(first.coeffs, second.coeffs)
    assert first.params == param_pair
    assert first.size == 5


def test_results_dir_exported(results_dir):
    assert os.environ["JACHARM_OUTPUT_DIR"] == str(results_dir)
