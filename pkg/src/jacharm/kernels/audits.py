"""Grid audits of the standard (size and smoothness) estimates of the g-function kernel.

The growth audit scans ||K(theta, phi)|| mu(B(theta, |theta-phi|)), the gradient audit
(||d_theta K|| + ||d_phi K||) |theta-phi| mu(B(theta, |theta-phi|)). Both estimates hide
their constants, so an audit passes when the supremum is finite and moves by less than
the drift tolerance when the grid is doubled.
"""

import asyncio
import logging
import time
from typing import Callable, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from ..exceptions import ParameterError
from ..helpers import interior_grid, relative_drift
from ..model import ExperimentReport, ParameterPair
from ..pipelines.concurrent_processor import ConcurrentProcessor
from ..pipelines.pipeline import Pipeline
from ..pipelines.progress_tracker import ProgressTracker
from ..pipelines.ratio_suite import DEFAULT_DRIFT_TOLERANCE
from .geometry import HomogeneousSpace, ball_measure
from .poisson_kernel import DEFAULT_T_FLOOR, truncation_order
from .vertical import frac_kernel_gradient_norm, frac_kernel_vertical_norm

_log = logging.getLogger(__name__)


class GridConfig(BaseModel):
    """Point pairs scanned by a kernel audit."""

    points: int = Field(default=24, ge=3, description="Grid nodes per axis")
    margin: float = Field(default=1e-2, gt=0, lt=1, description="Distance of the grid from the endpoints 0 and pi")
    diagonal_margin: float = Field(default=1e-3, gt=0, description="Smallest |theta - phi| scanned")
    band: Optional[Tuple[float, float]] = Field(
        default=None, description="Near-diagonal stress band [lo, hi] of |theta - phi|; None scans the full grid"
    )
    band_offsets: int = Field(default=6, ge=2, description="Offsets per grid node inside the band")
    t_floor: float = Field(default=DEFAULT_T_FLOOR, gt=0, description="Lower end of the t-integral, keep it well below diagonal_margin")

    def refined(self) -> "GridConfig":
        """Nested grid with doubled density."""
        return self.model_copy(update={"points": 2 * self.points - 1, "band_offsets": 2 * self.band_offsets - 1})

    def rows(self) -> List[Tuple[np.ndarray, np.ndarray]]:
        """Pairs grouped by their theta node, one (theta, phi) array pair per row."""
        nodes = interior_grid(self.points, self.margin)
        rows = []
        for theta in nodes:
            if self.band is None:
                phi = nodes[np.abs(nodes - theta) >= self.diagonal_margin]
            else:
                lo, hi = self.band
                offsets = np.geomspace(max(lo, self.diagonal_margin), hi, self.band_offsets)
                phi = np.concatenate([theta - offsets[::-1], theta + offsets])
                phi = phi[(phi >= self.margin) & (phi <= np.pi - self.margin)]
            if phi.size:
                rows.append((np.full(phi.shape, theta), phi))
        return rows


class HeatmapCell(BaseModel):
    theta: float
    phi: float
    value: float


RowFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _blocks(rows: List[Tuple[np.ndarray, np.ndarray]], count: int) -> List[Tuple[int, np.ndarray, np.ndarray]]:
    # contiguous row blocks share one recurrence over their points
    chunks = np.array_split(np.arange(len(rows)), max(1, min(count, len(rows))))
    return [
        (i, np.concatenate([rows[j][0] for j in chunk]), np.concatenate([rows[j][1] for j in chunk]))
        for i, chunk in enumerate(chunks)
        if chunk.size
    ]


async def scan_grid(
    grid: GridConfig, product: RowFunction, max_concurrent: int = 4, name: str = "audit"
) -> List[HeatmapCell]:
    """Evaluate `product` over the grid rows concurrently; cells come back in row order."""
    blocks = _blocks(grid.rows(), 2 * max_concurrent)
    tracker = ProgressTracker(len(blocks), name=name)

    def evaluate(block: Tuple[int, np.ndarray, np.ndarray]) -> Tuple[int, np.ndarray, np.ndarray, np.ndarray]:
        index, theta, phi = block
        values = product(theta, phi)
        tracker.increment()
        return index, theta, phi, values

    pipeline = Pipeline([ConcurrentProcessor(evaluate, max_concurrent=max_concurrent, name=name)])
    results = sorted(await pipeline.run_and_return(blocks), key=lambda r: r[0])
    return [
        HeatmapCell(theta=float(t), phi=float(p), value=float(v))
        for _, theta, phi, values in results
        for t, p, v in zip(theta, phi, values)
    ]


def _supremum(cells: List[HeatmapCell]) -> float:
    values = np.array([c.value for c in cells])
    return float(np.max(values)) if values.size and np.all(np.isfinite(values)) else float("inf")


def _audit(
    experiment: str,
    space: HomogeneousSpace,
    gamma: float,
    grid: GridConfig,
    product: RowFunction,
    derivative: bool,
    tolerance: float,
    max_concurrent: int,
) -> ExperimentReport:
    started = time.perf_counter()
    params = space.params
    _log.info("Kernel audit %s for %s, gamma=%g, %d-point grid", experiment, params, gamma, grid.points)
    base = asyncio.run(scan_grid(grid, product, max_concurrent, f"{experiment} base"))
    refined = asyncio.run(scan_grid(grid.refined(), product, max_concurrent, f"{experiment} grid x2"))
    value, refined_value = _supremum(base), _supremum(refined)
    drift = relative_drift(value, refined_value)
    finite = bool(np.isfinite(value) and np.isfinite(refined_value))
    passed = finite and drift < tolerance
    argmax = max(base, key=lambda c: c.value) if base else None
    _log.log(
        logging.INFO if passed else logging.WARNING,
        "Kernel audit %s: sup %.6g, refined %.6g, drift %.3g, pass=%s",
        experiment, value, refined_value, drift, passed,
    )
    return ExperimentReport(
        experiment=experiment,
        params=params,
        s_or_gamma=gamma,
        passed=passed,
        details={
            "supremum": value,
            "refined_supremum": refined_value,
            "resolution_drift": drift,
            "tolerance": tolerance,
            "pairs": len(base),
            "argmax": argmax.model_dump() if argmax else None,
            "terms": truncation_order(params, grid.t_floor, gamma, derivative=derivative, t_floor=grid.t_floor),
            "heatmap": [c.model_dump() for c in base],
        },
        config={"grid": grid.model_dump()},
        runtime_ms=(time.perf_counter() - started) * 1000,
    )


def cz_growth_audit(
    space: HomogeneousSpace,
    gamma: float,
    grid: GridConfig | None = None,
    tolerance: float = DEFAULT_DRIFT_TOLERANCE,
    max_concurrent: int = 4,
) -> ExperimentReport:
    """sup over the grid of ||K(theta, phi)||_B mu(B(theta, |theta - phi|))."""
    grid = grid or GridConfig()

    def product(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
        norms = frac_kernel_vertical_norm(space, gamma, theta, phi, t_floor=grid.t_floor)
        return norms * ball_measure(space, theta, np.abs(theta - phi))

    return _audit("kernel-growth", space, gamma, grid, product, False, tolerance, max_concurrent)


def cz_gradient_audit(
    space: HomogeneousSpace,
    gamma: float,
    grid: GridConfig | None = None,
    tolerance: float = DEFAULT_DRIFT_TOLERANCE,
    max_concurrent: int = 4,
) -> ExperimentReport:
    """sup over the grid of (||d_theta K|| + ||d_phi K||) |theta - phi| mu(B(theta, |theta - phi|))."""
    grid = grid or GridConfig()

    def product(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
        distance = np.abs(theta - phi)
        norms = frac_kernel_gradient_norm(space, gamma, theta, phi, t_floor=grid.t_floor)
        return norms * distance * ball_measure(space, theta, distance)

    return _audit("kernel-gradient", space, gamma, grid, product, True, tolerance, max_concurrent)


def audit_params(regime: str) -> ParameterPair:
    """Representative pair of a sign regime "++", "+-", "-+" or "--" relative to -1/2."""
    values = {"+": 0.5, "-": -0.75}
    if len(regime) != 2 or any(c not in values for c in regime):
        raise ParameterError(f"Sign regime must be two of '+'/'-', got {regime!r}")
    return ParameterPair(alpha=values[regime[0]], beta=values[regime[1]])
