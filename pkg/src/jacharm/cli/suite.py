"""Named batches of runs covering the acceptance checks.

`smoke` uses small truncations and sample counts and finishes in about a minute;
`full` runs every check at its acceptance size.
"""

import asyncio
import logging
import math
import time
from enum import StrEnum
from pathlib import Path
from typing import Any, Dict, List

from ..exceptions import ConfigError, ConvergenceError, ResolutionError
from ..kernels.audits import GridConfig
from ..model import ExperimentReport, ParameterPair
from ..pipelines.pipeline import Pipeline
from ..pipelines.report_writer import ReportWriter
from .commands import report_path, run
from .config import AuditKind, Experiment, RunConfig, resolve_output_dir

_log = logging.getLogger(__name__)


class SuiteName(StrEnum):
    SMOKE = "smoke"
    FULL = "full"


ORTHONORMALITY_PAIRS = [(-0.5, -0.5), (0.0, 0.0), (-0.75, 1 / 3), (2.0, -0.9)]
SIGN_REGIMES = ["++", "+-", "-+", "--"]


def _pair(alpha: float, beta: float) -> ParameterPair:
    return ParameterPair(alpha=alpha, beta=beta)


def _smoke() -> List[Dict[str, Any]]:
    small = {"n_terms": 8, "samples": 16}
    return [
        {"experiment": Experiment.EXPAND, "n_terms": 32},
        {"experiment": Experiment.EXPAND, "params": _pair(-0.5, -0.5), "function": "cosine", "n_terms": 16},
        {"experiment": Experiment.POISSON, **small},
        {"experiment": Experiment.GFUNC, "n_terms": 8, "samples": 3},
        {"experiment": Experiment.CAPUTO_ORACLE, "n_terms": 6, "samples": 10},
        {"experiment": Experiment.EQUIV, "p": 2.0, "gamma": 0.5, "k": 1, **small},
        {"experiment": Experiment.EQUIV, "params": _pair(-0.5, -0.5), "p": 2.0, "gamma": 0.5, "k": 1, **small},
        {"experiment": Experiment.STRUCT, "p": 2.0, "r": 0.5, "s": 1.0, **small},
        {"experiment": Experiment.PENCIL, "p": 3.0},
        {"experiment": Experiment.STRICHARTZ, "p": 2.0, "s": 1.0, "n_terms": 6, "samples": 8},
        {
            "experiment": Experiment.KERNEL_AUDIT,
            "regime": "++",
            "gamma": 0.5,
            "grid": GridConfig(points=6, margin=0.2, diagonal_margin=0.05, t_floor=1e-2),
        },
        {"experiment": Experiment.LEMMA36, "eta": 1.5, "xi": 0.0, "gamma": 0.5},
    ]


def _full() -> List[Dict[str, Any]]:
    suite: List[Dict[str, Any]] = []
    for alpha, beta in ORTHONORMALITY_PAIRS:
        suite.append({"experiment": Experiment.EXPAND, "params": _pair(alpha, beta), "n_terms": 41})
    suite.append({"experiment": Experiment.POISSON})
    suite.append({"experiment": Experiment.CAPUTO_ORACLE, "samples": 20, "n_terms": 8})
    for pair in [(0.0, 0.0), (-0.5, -0.5)]:
        suite.append({"experiment": Experiment.GFUNC, "params": _pair(*pair), "samples": 10, "n_terms": 12})
    suite.append({"experiment": Experiment.EQUIV, "p": 2.0, "gamma": 0.5, "k": 2})
    # singular pair: equivalence holds in the modified potential spaces
    suite.append({"experiment": Experiment.EQUIV, "params": _pair(-0.5, -0.5), "p": 2.0, "gamma": 0.5, "k": 1})
    mc = {"samples": 300}
    suite += [
        {"experiment": Experiment.STRUCT, "p": 3.0, "r": 0.5, "s": 1.5, **mc},
        {"experiment": Experiment.RIESZ, "p": 3.0, "s": 1.0, "k": 1, **mc},
        {"experiment": Experiment.DERIVATIVE, "p": 3.0, "s": 2.0, "k": 1, **mc},
        {"experiment": Experiment.EMBED, "p": 2.0, "s": 1.5, "q": math.inf, **mc},
        {"experiment": Experiment.EQUIV, "p": 3.0, "gamma": 0.5, "k": 1, **mc},
        {"experiment": Experiment.GNORM, "p": 3.0, "gamma": 0.5, **mc},
        {"experiment": Experiment.GK_MONOTONICITY, "p": 3.0, "gamma": 0.5, "k": 1, "l": 2, **mc},
        {"experiment": Experiment.WEIGHTED_G, "p": 3.0, "gamma": 0.5, **mc},
    ]
    # integer alpha + beta: p = 2 runs also compare against the closed-form time integral
    for alpha_beta in [(0.0, 0.0), (-0.5, -0.5), (0.5, 0.5)]:
        suite.append({"experiment": Experiment.STRICHARTZ, "params": _pair(*alpha_beta), "p": 2.0, "s": 1.5, "samples": 50})
    suite += [
        {"experiment": Experiment.EXTENSION, "p": 2.0, "q": 4.0, "s": 1.5, "samples": 50},
        {"experiment": Experiment.MAXIMAL, "s": 1.0, "n_interval": 4, "samples": 50},
        {"experiment": Experiment.SCHRODINGER, "s": 1.0, "n_terms": 6},
    ]
    for regime in SIGN_REGIMES:
        for gamma in (0.5, 1.5):
            for audit in AuditKind:
                suite.append({"experiment": Experiment.KERNEL_AUDIT, "regime": regime, "gamma": gamma, "audit": audit})
    # power branch and the eta - xi - gamma = 1 boundary of the log branch
    for eta, xi in [(3.0, 0.0), (1.5, 0.0), (2.0, 0.5)]:
        suite.append({"experiment": Experiment.LEMMA36, "eta": eta, "xi": xi, "gamma": 0.5})
    return suite


SUITES = {SuiteName.SMOKE: _smoke, SuiteName.FULL: _full}


def suite_configs(name: str, **overrides) -> List[RunConfig]:
    try:
        builder = SUITES[SuiteName(name)]
    except ValueError:
        raise ConfigError(f"Unknown suite {name!r}, expected one of {[str(s) for s in SuiteName]}") from None
    return [RunConfig.model_validate(entry).with_overrides(**overrides) for entry in builder()]


def suite(name: str, **overrides) -> ExperimentReport:
    """Run every config of a suite; the suite passes when no run failed or broke down numerically.

    Exploratory runs (pass = None) do not fail the suite.
    """
    started = time.perf_counter()
    configs = suite_configs(name, **overrides)
    runs = []
    for index, cfg in enumerate(configs):
        _log.info("Suite %s: run %d/%d %s", name, index + 1, len(configs), cfg.experiment)
        try:
            report = run(cfg)
            runs.append({
                "experiment": report.experiment,
                "params": str(cfg.params),
                "pass": report.passed,
                "report": str(report_path(report, cfg)),
            })
        except (ResolutionError, ConvergenceError) as e:
            _log.warning("Suite %s: %s broke down: %s", name, cfg.experiment, e)
            runs.append({"experiment": str(cfg.experiment), "params": str(cfg.params), "pass": False, "error": str(e)})
    failed = [r for r in runs if r["pass"] is False]
    _log.log(logging.INFO if not failed else logging.WARNING, "Suite %s: %d runs, %d failed", name, len(runs), len(failed))
    return ExperimentReport(
        experiment=f"suite-{name}",
        # a suite spans several pairs; the report records the default one
        params=ParameterPair(alpha=0.0, beta=0.0),
        passed=not failed,
        details={"runs": runs, "failed": len(failed)},
        config={"overrides": {k: v for k, v in overrides.items() if v is not None and k != "output_dir"}},
        runtime_ms=(time.perf_counter() - started) * 1000,
    )


def write_suite_report(report: ExperimentReport, output_dir: Path | None = None) -> Path:
    """Aggregate report to `<out>/suite-<name>/summary.json`."""
    writer = ReportWriter(resolve_output_dir(output_dir), file_name="summary")
    asyncio.run(Pipeline([writer]).run_and_return(report))
    return writer.path_for(report)
