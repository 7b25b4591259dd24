"""Monte-Carlo ratio suites with the refinement/sample-doubling stability protocol.

A suite evaluates ratio(f, resolution) over a seeded sample of expansions. It runs three
times: at (samples, resolution), at (2 samples, resolution) and at (samples, 2 resolution).
It passes when every value is finite and the suite statistic drifts by less than the
tolerance in both directions.
"""

import asyncio
import logging
from enum import StrEnum
from typing import Any, Callable, Dict, List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field

from ..helpers import relative_drift
from ..model import Expansion, RatioStats
from .concurrent_processor import ConcurrentProcessor
from .log_processor import LogProcessor
from .pipeline import Pipeline
from .progress_tracker import ProgressTracker

DEFAULT_DRIFT_TOLERANCE = 0.1

RatioFunction = Callable[[Expansion, int], float]
Sampler = Callable[[int], Sequence[Expansion]]

_log = logging.getLogger(__name__)


class Statistic(StrEnum):
    """SUPREMUM for boundedness claims, SPREAD (max/min) for two-sided equivalences."""

    SUPREMUM = "supremum"
    SPREAD = "spread"

    def of(self, ratios: np.ndarray) -> float:
        if ratios.size == 0:
            return float("nan")
        if self == Statistic.SUPREMUM:
            return float(np.max(ratios))
        low = float(np.min(ratios))
        return float(np.max(ratios)) / low if low > 0 else float("inf")


class RatioSample(BaseModel):
    """Ratio of one sample, tagged with its index in the seeded sample stream."""

    index: int
    ratio: float


class RatioProcessor(ConcurrentProcessor[Tuple[int, Expansion], RatioSample]):
    """Evaluates one sample per worker thread."""

    def __init__(
        self,
        ratio: RatioFunction,
        resolution: int,
        tracker: ProgressTracker | None = None,
        max_concurrent: int = 4,
        name: str | None = None,
    ):
        super().__init__(max_concurrent=max_concurrent, name=name)
        self.ratio = ratio
        self.resolution = resolution
        self.tracker = tracker

    async def process_item(self, data: Tuple[int, Expansion]) -> RatioSample:
        index, e = data
        value = await asyncio.to_thread(self.ratio, e, self.resolution)
        if self.tracker:
            self.tracker.increment()
        return RatioSample(index=index, ratio=float(value))


async def evaluate_ratios(
    samples: Sequence[Tuple[int, Expansion]],
    ratio: RatioFunction,
    resolution: int,
    max_concurrent: int = 4,
    tracker: ProgressTracker | None = None,
    name: str = "ratios",
) -> List[RatioSample]:
    """Run the ratio over indexed samples; the result is sorted by sample index."""
    if not samples:
        return []
    if tracker is not None:
        tracker.set_total_steps(len(samples))
    pipeline = Pipeline(
        [
            RatioProcessor(ratio, resolution, tracker, max_concurrent, name=name),
            LogProcessor("Sample {index}: ratio {ratio:.10g}", name=__name__),
        ]
    )
    results = await pipeline.run_and_return(list(samples))
    return sorted(results, key=lambda r: r.index)


class StabilityResult(BaseModel):
    """Outcome of the three-run stability protocol."""

    statistic: Statistic
    value: float
    ratios: List[RatioSample]
    sample_drift: float
    resolution_drift: float
    tolerance: float = DEFAULT_DRIFT_TOLERANCE
    resolution: int
    extra: Dict[str, Any] = Field(default_factory=dict)

    @property
    def finite(self) -> bool:
        return bool(np.isfinite(self.value) and all(np.isfinite(r.ratio) for r in self.ratios))

    @property
    def passed(self) -> bool:
        return self.finite and self.sample_drift < self.tolerance and self.resolution_drift < self.tolerance

    @property
    def stats(self) -> RatioStats:
        return RatioStats.from_values([r.ratio for r in self.ratios])

    def details(self) -> Dict[str, Any]:
        return {
            "statistic": str(self.statistic),
            "value": self.value,
            "sample_drift": self.sample_drift,
            "resolution_drift": self.resolution_drift,
            "tolerance": self.tolerance,
            "resolution": self.resolution,
            **self.extra,
            "ratios": [r.model_dump() for r in self.ratios],
        }


async def stability_protocol(
    sampler: Sampler,
    ratio: RatioFunction,
    samples: int,
    resolution: int,
    statistic: Statistic = Statistic.SUPREMUM,
    tolerance: float = DEFAULT_DRIFT_TOLERANCE,
    max_concurrent: int = 4,
    name: str = "suite",
) -> StabilityResult:
    """Run a ratio suite under the stability protocol.

    `sampler(n)` must return the first n samples of one seeded stream, so the doubled run
    only evaluates the new samples.
    """
    progress = ProgressTracker(3, name=name)
    doubled = list(enumerate(sampler(2 * samples)))
    base = await evaluate_ratios(
        doubled[:samples], ratio, resolution, max_concurrent, ProgressTracker(parent=progress, name=f"{name} base"), name
    )
    extra = await evaluate_ratios(
        doubled[samples:], ratio, resolution, max_concurrent, ProgressTracker(parent=progress, name=f"{name} samples x2"), name
    )
    refined = await evaluate_ratios(
        doubled[:samples], ratio, 2 * resolution, max_concurrent, ProgressTracker(parent=progress, name=f"{name} grid x2"), name
    )

    def stat(rs: List[RatioSample]) -> float:
        return statistic.of(np.array([r.ratio for r in rs]))

    value = stat(base)
    result = StabilityResult(
        statistic=statistic,
        value=value,
        ratios=base,
        sample_drift=relative_drift(value, stat(base + extra)),
        resolution_drift=relative_drift(value, stat(refined)),
        tolerance=tolerance,
        resolution=resolution,
    )
    level = logging.INFO if result.passed else logging.WARNING
    _log.log(
        level,
        "Suite %s: %s %.6g, drift samples %.3g, drift grid %.3g, pass=%s",
        name, statistic, value, result.sample_drift, result.resolution_drift, result.passed,
    )
    return result


def run_stability_protocol(*args, **kwargs) -> StabilityResult:
    """Synchronous entry point of `stability_protocol` for experiment runners."""
    return asyncio.run(stability_protocol(*args, **kwargs))
