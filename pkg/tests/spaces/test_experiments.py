import math

import numpy as np
import pytest

from jacharm.exceptions import InadmissibleExponentsError, ParameterError, ParameterMismatchError
from jacharm.fractional import Method, single_mode_constant
from jacharm.model import Expansion, ParameterPair
from jacharm.operators import Flavor, identity
from jacharm.spaces import (
    PotentialSpaceTag,
    SamplerConfig,
    check_embedding,
    derivative_experiment,
    embedding_experiment,
    equivalence_experiment,
    g_k_monotonicity_experiment,
    gfunction_norm_experiment,
    multiplier_experiment,
    norm_experiment,
    pencil_experiment,
    riesz_transform_experiment,
    semigroup_experiment,
    structural_experiment,
)

LEGENDRE = ParameterPair(alpha=0.0, beta=0.0)
SMALL = SamplerConfig(n_terms=6, samples=3, seed=1)


def tag(p: float, s: float, params: ParameterPair = LEGENDRE, flavor: Flavor = Flavor.RIESZ) -> PotentialSpaceTag:
    return PotentialSpaceTag(params=params, p=p, s=s, flavor=flavor)


def test_structural_experiment_isometry():
    # When: L^{2,1} is compared with L^{2,1/2}
    report = structural_experiment(tag(2.0, 0.5), tag(2.0, 1.0), SMALL, max_concurrent=2)
    # Then: the lift between them is isometric and ratios stay below lambda_0^{-1/4}
    assert report.experiment == "struct"
    assert report.details["isometry_error"] <= 1e-12
    assert report.stats.max <= 0.25**-0.25 + 1e-9
    assert len(report.details["ratios"]) == 3
    assert len(report.details["single_mode_ratios"]) == 41


def test_structural_experiment_preconditions():
    with pytest.raises(ParameterError):
        structural_experiment(tag(2.0, 1.0), tag(2.0, 0.5), SMALL)
    with pytest.raises(ParameterMismatchError):
        structural_experiment(tag(2.0, 0.5), tag(2.0, 1.0, flavor=Flavor.BESSEL), SMALL)


def test_embedding_branches():
    assert check_embedding(tag(2.0, 1.0), math.inf) == "sup"
    assert check_embedding(tag(2.0, 0.25), 4.0) == "lp"
    with pytest.raises(InadmissibleExponentsError):
        check_embedding(tag(2.0, 0.4), math.inf)
    with pytest.raises(InadmissibleExponentsError):
        check_embedding(tag(2.0, 0.1), 4.0)
    with pytest.raises(InadmissibleExponentsError):
        check_embedding(tag(2.0, 1.0, params=ParameterPair(alpha=-0.75, beta=0.0)), math.inf)
    with pytest.raises(InadmissibleExponentsError):
        check_embedding(tag(2.0, 1.0, params=ParameterPair(alpha=-0.75, beta=0.0)), 4.0)


def test_embedding_l2_bound():
    report = embedding_experiment(tag(2.0, 1.0), 2.0, SMALL, max_concurrent=2)
    # ||f||_2 <= lambda_0^{-1/2} ||f||_{L^{2,1}}
    assert report.details["l2_bound"] == pytest.approx(2.0)
    assert report.stats.max <= 2.0 + 1e-9
    assert report.details["branch"] == "lp"


def test_equivalence_constant_for_p_two():
    report = equivalence_experiment(tag(2.0, 0.5), 1, SMALL, method=Method.GRAM, max_concurrent=2)
    # Then: every ratio is the single-mode constant of order k - gamma
    assert report.details["l2_constant"] == pytest.approx(single_mode_constant(0.5))
    np.testing.assert_allclose([r["ratio"] for r in report.details["ratios"]], single_mode_constant(0.5), rtol=1e-8)
    assert report.passed is True


def test_equivalence_on_singular_pair_uses_shifted_function():
    singular = ParameterPair(alpha=-0.5, beta=-0.5)
    report = equivalence_experiment(
        PotentialSpaceTag.for_params(singular, 2.0, 0.5), 1, SMALL, method=Method.GRAM, max_concurrent=2
    )
    assert report.details["tilde"] is True
    assert report.details["flavor"] == "modified"
    assert report.details["l2_constant_max_rel_err"] <= 1e-6
    assert report.passed is True


def test_equivalence_fails_off_the_exact_constant(mocker):
    # Given: a constant off by the factor 2, as a wrong 2^{k - gamma} normalization would give
    mocker.patch("jacharm.spaces.experiments.single_mode_constant", return_value=2 * single_mode_constant(0.5))
    # When
    report = equivalence_experiment(tag(2.0, 0.5), 1, SMALL, method=Method.GRAM, max_concurrent=2)
    # Then: the ratios still agree with each other but not with the constant
    assert report.details["l2_constant_max_rel_err"] == pytest.approx(0.5, rel=1e-6)
    assert report.passed is False


def test_gfunction_norm_for_p_two():
    report = gfunction_norm_experiment(LEGENDRE, 2.0, 0.75, SMALL, method=Method.GRAM, max_concurrent=2)
    assert report.details["isometry_max_rel_err"] <= 1e-6
    assert report.passed is True
    with pytest.raises(InadmissibleExponentsError):
        gfunction_norm_experiment(ParameterPair(alpha=-0.75, beta=0.0), 5.0, 0.5, SMALL)


def test_riesz_transform_contracts_l2_modes():
    report = riesz_transform_experiment(tag(2.0, 1.0), 1, SMALL, max_concurrent=2)
    assert report.stats.max <= 1.0
    assert report.k == 1


def test_derivative_into_lp():
    report = derivative_experiment(tag(2.0, 1.0), 1, SMALL, max_concurrent=2)
    assert report.details["target"] == "L^2"
    assert report.stats.max <= 1.0
    with pytest.raises(ParameterError):
        derivative_experiment(tag(2.0, 1.0), 2, SMALL)


def test_monotonicity_needs_ordered_orders():
    with pytest.raises(ParameterError):
        g_k_monotonicity_experiment(LEGENDRE, 2.0, 0.5, 2, 1, SMALL)


def test_identity_multiplier_ratios():
    report = multiplier_experiment(identity(LEGENDRE), 3.0, SMALL, max_concurrent=2)
    np.testing.assert_allclose([r["ratio"] for r in report.details["ratios"]], 1.0, rtol=1e-12)


@pytest.mark.parametrize(
    "params, p, bounded",
    [(LEGENDRE, 3.0, True), (ParameterPair(alpha=-0.75, beta=1 / 3), 5.0, False)],
)
def test_pencil_experiment(params, p, bounded):
    report = pencil_experiment(params, p)
    assert report.details["expected_bounded"] is bounded
    assert report.passed is True


def test_pencil_needs_valid_exponent():
    with pytest.raises(ParameterError):
        pencil_experiment(LEGENDRE, 0.5)


def test_semigroup_experiment(param_pair):
    report = semigroup_experiment(param_pair, 1.0, 0.5, SamplerConfig(n_terms=8, samples=3))
    assert report.experiment == "poisson"
    assert report.passed is True
    assert report.details["semigroup_law"] <= 1e-12
    assert report.details["maximal_defect"] <= 1e-3
    with pytest.raises(ParameterError):
        semigroup_experiment(param_pair, 0.0, 0.5)


def test_norm_experiment_is_exploratory(random_expansion):
    e = random_expansion(LEGENDRE, 6)
    report = norm_experiment(e, tag(2.0, 1.0), name="random")
    assert report.exploratory is True
    assert report.passed is None
    assert report.details["lp_norm"] == pytest.approx(e.l2_norm())
    assert report.details["sup_norm"] > 0
    with pytest.raises(ParameterMismatchError):
        norm_experiment(Expansion.unit(ParameterPair(alpha=1.0, beta=0.0), 1), tag(2.0, 1.0))
