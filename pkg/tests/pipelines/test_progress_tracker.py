import pytest

from jacharm.exceptions import ConfigError
from jacharm.pipelines import ProgressTracker


def test_child_completion_increments_parent():
    # Given: a parent of two runs and a child per run
    parent = ProgressTracker(2, name="suite")
    child = ProgressTracker(3, parent=parent, name="base")
    # When: the child completes
    for _ in range(3):
        child.increment()
    # Then: the parent moved one step
    assert child.is_complete()
    assert parent.get_progress() == pytest.approx(0.5)
    assert not parent.is_complete()


def test_total_steps_rules():
    tracker = ProgressTracker(name="grid")
    assert tracker.get_progress() == 0.0
    with pytest.raises(ConfigError):
        tracker.increment()
    with pytest.raises(ConfigError):
        tracker.set_total_steps(0)
    tracker.set_total_steps(1)
    tracker.increment()
    with pytest.raises(ConfigError):
        tracker.set_total_steps(2)
    with pytest.raises(ConfigError):
        tracker.increment()
