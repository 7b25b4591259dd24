from typing import Any

import numpy as np

from ..model import ExperimentReport


def assert_rel_close(actual: Any, expected: Any, rel: float = 1e-10, what: str = "value") -> None:
    """Elementwise |actual - expected| <= rel * max(|expected|, tiny), with the worst offender in the message."""
    a = np.asarray(actual)
    e = np.asarray(expected)
    assert a.shape == e.shape, f"{what}: shape {a.shape} != {e.shape}"
    scale = np.maximum(np.abs(e), np.finfo(float).tiny)
    err = np.abs(a - e) / scale
    worst = int(np.argmax(err)) if err.size else 0
    assert np.all(err <= rel), f"{what}: relative error {err.flat[worst]:.3g} > {rel:g} at index {worst}"


def assert_passed(report: ExperimentReport) -> None:
    assert report.passed is True, f"{report.experiment} {report.params} failed: {report.details}"
