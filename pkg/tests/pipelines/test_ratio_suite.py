import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis.strategies import floats, lists

from jacharm.model import Expansion, ParameterPair
from jacharm.pipelines import ProgressTracker, Statistic, evaluate_ratios, run_stability_protocol

PAIR = ParameterPair(alpha=0.0, beta=0.0)


def sampler(n: int):
    rng = np.random.default_rng(7)
    return [Expansion(params=PAIR, coeffs=rng.standard_normal(4)) for _ in range(n)]


def size_ratio(e: Expansion, resolution: int) -> float:
    return float(np.abs(e.coeffs[0]) + 1.0)


@given(lists(floats(min_value=1e-3, max_value=1e3), min_size=1, max_size=20))
@settings(max_examples=50, deadline=None)
def test_spread_is_at_least_one(values):
    ratios = np.array(values)
    assert Statistic.SPREAD.of(ratios) >= 1.0
    assert Statistic.SUPREMUM.of(ratios) == pytest.approx(max(values))


def test_statistics_of_degenerate_samples():
    assert np.isnan(Statistic.SUPREMUM.of(np.array([])))
    assert Statistic.SPREAD.of(np.array([0.0, 1.0])) == float("inf")


@pytest.mark.asyncio
async def test_ratios_sorted_by_sample_index():
    samples = list(enumerate(sampler(6)))
    tracker = ProgressTracker(name="ratios")
    # When: samples are evaluated concurrently
    results = await evaluate_ratios(samples, size_ratio, 16, max_concurrent=3, tracker=tracker)
    # Then: the order follows the sample stream, not completion
    assert [r.index for r in results] == list(range(6))
    assert tracker.is_complete()
    assert results[2].ratio == pytest.approx(size_ratio(samples[2][1], 16))


@pytest.mark.asyncio
async def test_no_samples():
    assert await evaluate_ratios([], size_ratio, 16) == []


def test_resolution_independent_ratio_passes():
    # When: the ratio does not depend on the resolution
    result = run_stability_protocol(sampler, size_ratio, 8, 16, Statistic.SUPREMUM, max_concurrent=2)
    # Then: only the doubled sample can move the statistic
    assert result.resolution_drift == 0.0
    assert result.finite
    assert len(result.ratios) == 8
    assert result.passed == (result.sample_drift < result.tolerance)
    details = result.details()
    assert details["statistic"] == "supremum"
    assert len(details["ratios"]) == 8


def test_resolution_dependent_ratio_fails():
    result = run_stability_protocol(sampler, lambda e, res: float(res), 4, 16, Statistic.SUPREMUM)
    # Then: doubling the resolution doubles the statistic
    assert result.resolution_drift == pytest.approx(1.0)
    assert not result.passed


def test_infinite_ratio_is_not_finite():
    result = run_stability_protocol(sampler, lambda e, res: float("inf"), 2, 8)
    assert not result.finite
    assert not result.passed
