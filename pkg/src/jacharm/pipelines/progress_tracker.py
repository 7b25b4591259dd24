import logging
import threading
from typing import Optional

from ..exceptions import ConfigError


class ProgressTracker:
    """Tracks progress of a task with a defined number of steps.
    Can be nested: completing a child tracker increments its parent.
    """

    _log = logging.getLogger(__name__)

    def __init__(
        self,
        total_steps: int = 0,
        parent: Optional["ProgressTracker"] = None,
        name: str = None,
    ):
        self.total_steps = total_steps
        self.completed_steps = 0
        self._lock = threading.Lock()
        self.parent = parent
        self.name = name

    def set_total_steps(self, total_steps: int):
        """Sets the number of steps required for this tracker.

        Raises:
            ConfigError: If `total_steps` is not positive or steps were already completed.
        """
        if total_steps <= 0:
            raise ConfigError("Total steps must be greater than zero.")
        with self._lock:
            if self.completed_steps > 0:
                raise ConfigError(f"{self.name} Cannot set total steps after steps have been completed.")
            self.total_steps = total_steps

    def increment(self):
        """Increases the number of completed steps by one and increments the parent on completion."""
        if self.total_steps == 0:
            raise ConfigError(f"{self.name} Total steps must be set before incrementing.")
        with self._lock:
            self.completed_steps += 1
            if self.completed_steps > self.total_steps:
                raise ConfigError(f"{self.name} Completed steps cannot exceed total steps.")
            current_completed = self.completed_steps
            current_total = self.total_steps
        self.notify(current_completed, current_total)
        if current_completed == current_total and self.parent:
            self._log.debug("Tracker %s complete, incrementing parent %s", self.name, self.parent)
            self.parent.increment()

    def get_progress(self) -> float:
        """Progress between 0.0 and 1.0; 0.0 while total_steps is unset."""
        with self._lock:
            total = self.total_steps
            completed = self.completed_steps
        if total == 0:
            return 0.0
        return min(completed, total) / total

    def is_complete(self) -> bool:
        with self._lock:
            return self.total_steps > 0 and self.completed_steps == self.total_steps

    def notify(self, completed: int, total: int):
        """Logs the current progress."""
        name = f" {self.name}" if self.name else ""
        self._log.info("Progress%s: %d/%d (%.1f%%)", name, completed, total, 100.0 * completed / total)

    def __repr__(self) -> str:
        with self._lock:
            return f"<ProgressTracker({self.name}: {self.completed_steps}/{self.total_steps})>"
