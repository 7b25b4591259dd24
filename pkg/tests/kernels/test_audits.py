import asyncio

import numpy as np
import pytest

from jacharm.exceptions import ParameterError
from jacharm.kernels import GridConfig, HomogeneousSpace, audit_params, cz_gradient_audit, cz_growth_audit, scan_grid
from jacharm.model import ParameterPair

SMALL_GRID = GridConfig(points=6, margin=0.2, diagonal_margin=0.05, t_floor=1e-2)


def test_grid_rows_skip_the_diagonal():
    rows = SMALL_GRID.rows()
    # Then: one row per node, every pair at least diagonal_margin apart
    assert len(rows) == 6
    for theta, phi in rows:
        assert theta.shape == phi.shape
        assert np.all(np.abs(theta - phi) >= SMALL_GRID.diagonal_margin)


def test_band_rows_stay_near_diagonal():
    grid = SMALL_GRID.model_copy(update={"band": (0.05, 0.2), "band_offsets": 3})
    for theta, phi in grid.rows():
        distance = np.abs(theta - phi)
        assert np.all((distance >= 0.05 - 1e-12) & (distance <= 0.2 + 1e-12))
        assert np.all((phi >= grid.margin) & (phi <= np.pi - grid.margin))


def test_refined_grid_is_nested():
    refined = SMALL_GRID.refined()
    assert refined.points == 11
    coarse = np.linspace(SMALL_GRID.margin, np.pi - SMALL_GRID.margin, SMALL_GRID.points)
    fine = np.linspace(refined.margin, np.pi - refined.margin, refined.points)
    np.testing.assert_allclose(fine[::2], coarse)


def test_scan_grid_keeps_row_order():
    # When: a simple product is scanned by several workers
    cells = asyncio.run(scan_grid(SMALL_GRID, lambda theta, phi: theta - phi, max_concurrent=3))
    # Then: every pair is evaluated once and the cells follow the row order
    expected = [(t, p) for theta, phi in SMALL_GRID.rows() for t, p in zip(theta, phi)]
    assert [(c.theta, c.phi) for c in cells] == pytest.approx(expected)
    assert all(c.value == pytest.approx(c.theta - c.phi) for c in cells)


@pytest.mark.parametrize("regime", ["++", "+-", "-+", "--"])
def test_audit_params_follow_sign_regime(regime):
    params = audit_params(regime)
    assert (params.alpha > -0.5) == (regime[0] == "+")
    assert (params.beta > -0.5) == (regime[1] == "+")


def test_audit_params_rejects_unknown_regime():
    with pytest.raises(ParameterError):
        audit_params("+")
    with pytest.raises(ParameterError):
        audit_params("+x")


def test_growth_audit_report():
    space = HomogeneousSpace(params=ParameterPair(alpha=0.5, beta=0.5))
    # When: the size estimate is audited on a coarse grid
    report = cz_growth_audit(space, 0.5, SMALL_GRID, max_concurrent=2)
    # Then: the supremum is finite and the heatmap covers every pair
    assert report.experiment == "kernel-growth"
    assert np.isfinite(report.details["supremum"])
    assert report.details["supremum"] > 0
    assert len(report.details["heatmap"]) == report.details["pairs"]
    assert report.details["terms"] >= 1
    assert report.passed == (report.details["resolution_drift"] < report.details["tolerance"])


def test_gradient_audit_report():
    space = HomogeneousSpace(params=audit_params("-+"))
    report = cz_gradient_audit(space, 1.5, SMALL_GRID, max_concurrent=2)
    assert report.experiment == "kernel-gradient"
    assert np.isfinite(report.details["refined_supremum"])
    assert report.details["argmax"]["value"] == pytest.approx(report.details["supremum"])
