"""One module operation per experiment and the persistence of its report."""

import asyncio
import hashlib
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Tuple

from ..core.analysis import fourier_coeffs
from ..core.checks import expansion_experiment
from ..core.quadrature import default_resolution, quadrature_rule
from ..fractional.oracles import DEFAULT_ISOMETRY_GAMMAS, caputo_oracle_experiment, isometry_experiment
from ..kernels.audits import audit_params, cz_gradient_audit, cz_growth_audit
from ..kernels.geometry import HomogeneousSpace
from ..kernels.nested_integral import lemma36_check
from ..kernels.vertical import weighted_g_experiment
from ..model import Expansion, ExperimentReport
from ..operators.potentials import Flavor
from ..pipelines.csv_writer import CsvWriter
from ..pipelines.log_processor import LogProcessor
from ..pipelines.pipeline import Pipeline
from ..pipelines.report_writer import ReportWriter
from ..schrodinger.experiments import (
    convergence_experiment,
    extension_experiment,
    maximal_bound_experiment,
    strichartz_experiment,
)
from ..spaces.experiments import (
    derivative_experiment,
    embedding_experiment,
    equivalence_experiment,
    g_k_monotonicity_experiment,
    gfunction_norm_experiment,
    norm_experiment,
    pencil_experiment,
    riesz_transform_experiment,
    semigroup_experiment,
    structural_experiment,
)
from ..spaces.tags import PotentialSpaceTag
from .config import AuditKind, Experiment, RunConfig

# list-valued details moved from the JSON report to CSV files
TABLES = ("ratios", "heatmap", "curve", "cases", "expansion")

_log = logging.getLogger(__name__)


def _tag(cfg: RunConfig, s: float | None = None) -> PotentialSpaceTag:
    return PotentialSpaceTag.for_params(cfg.params, cfg.p, cfg.s if s is None else s, cfg.flavor)


def _equivalence_tag(cfg: RunConfig) -> PotentialSpaceTag:
    # singular pairs are characterized in the (id + sqrt L) potential spaces
    flavor = Flavor.MODIFIED if cfg.params.singular else Flavor.RIESZ
    return PotentialSpaceTag(params=cfg.params, p=cfg.p, s=cfg.gamma, flavor=flavor)


def _target(cfg: RunConfig) -> Expansion:
    rule = quadrature_rule(cfg.resolution or default_resolution(cfg.n_terms), cfg.params)
    return fourier_coeffs(cfg.test_function, cfg.n_terms, cfg.params, rule)


def _kernel_audit(cfg: RunConfig) -> ExperimentReport:
    params = audit_params(cfg.regime) if cfg.regime else cfg.params
    audit = cz_growth_audit if cfg.audit == AuditKind.GROWTH else cz_gradient_audit
    return audit(HomogeneousSpace(params=params), cfg.gamma, cfg.grid, max_concurrent=cfg.max_concurrent)


COMMANDS: Dict[Experiment, Callable[[RunConfig], ExperimentReport]] = {
    Experiment.EXPAND: lambda c: expansion_experiment(c.test_function, c.params, c.n_terms, c.resolution, c.function),
    Experiment.POISSON: lambda c: semigroup_experiment(c.params, *c.times, sampler=c.sampler),
    Experiment.GFUNC: lambda c: isometry_experiment(
        c.params, (c.gamma,) if c.gamma else DEFAULT_ISOMETRY_GAMMAS, c.samples, c.seed, c.n_terms, c.k or 4, c.method
    ),
    Experiment.CAPUTO_ORACLE: lambda c: caputo_oracle_experiment(c.params, c.samples, c.seed, c.n_terms),
    Experiment.NORMS: lambda c: norm_experiment(_target(c), _tag(c), c.resolution, c.function),
    Experiment.PENCIL: lambda c: pencil_experiment(c.params, c.p),
    Experiment.STRUCT: lambda c: structural_experiment(
        _tag(c, c.r), _tag(c), c.sampler, c.resolution, c.max_concurrent
    ),
    Experiment.RIESZ: lambda c: riesz_transform_experiment(_tag(c), c.k, c.sampler, c.resolution, c.max_concurrent),
    Experiment.DERIVATIVE: lambda c: derivative_experiment(_tag(c), c.k, c.sampler, c.resolution, c.max_concurrent),
    Experiment.EMBED: lambda c: embedding_experiment(_tag(c), c.q, c.sampler, c.resolution, c.max_concurrent),
    Experiment.EQUIV: lambda c: equivalence_experiment(
        _equivalence_tag(c),
        c.k, c.sampler, c.resolution, c.method, c.max_concurrent,
    ),
    Experiment.GNORM: lambda c: gfunction_norm_experiment(
        c.params, c.p, c.gamma, c.sampler, c.resolution, c.method, c.max_concurrent
    ),
    Experiment.GK_MONOTONICITY: lambda c: g_k_monotonicity_experiment(
        c.params, c.p, c.gamma, c.k, c.l, c.sampler, c.resolution, c.method, c.max_concurrent
    ),
    Experiment.WEIGHTED_G: lambda c: weighted_g_experiment(
        c.params, c.p, c.gamma, c.sampler, c.resolution, c.method, c.max_concurrent
    ),
    Experiment.SCHRODINGER: lambda c: convergence_experiment(_target(c), c.s),
    Experiment.MAXIMAL: lambda c: maximal_bound_experiment(
        c.params, c.s, c.n_interval, c.sampler, c.resolution, c.max_concurrent
    ),
    Experiment.STRICHARTZ: lambda c: strichartz_experiment(c.params, c.p, c.s, c.sampler, c.resolution, c.max_concurrent),
    Experiment.EXTENSION: lambda c: extension_experiment(
        c.params, c.p, c.q, c.s, c.sampler, c.resolution, c.max_concurrent
    ),
    Experiment.KERNEL_AUDIT: _kernel_audit,
    Experiment.LEMMA36: lambda c: lemma36_check(c.eta, c.xi, c.gamma, c.q_grid),
}


def run_id(cfg: RunConfig) -> str:
    """Stable file stem: the experiment name and a hash of the resolved config."""
    digest = hashlib.sha256(cfg.model_dump_json(exclude={"output_dir"}).encode()).hexdigest()
    return f"{cfg.experiment}-{digest[:12]}"


def split_tables(report: ExperimentReport) -> Tuple[ExperimentReport, Dict[str, List[Dict[str, Any]]]]:
    """Report without its list-valued tables, and the tables as CSV rows."""
    details = dict(report.details)
    tables = {}
    for name in TABLES:
        if name not in details:
            continue
        rows = details.pop(name)
        if name == "expansion":
            rows = [{"n": n, "re": c["re"], "im": c["im"]} for n, c in enumerate(rows["coeffs"])]
        tables[name] = rows
    return report.model_copy(update={"details": details}), tables


def persist(report: ExperimentReport, cfg: RunConfig) -> ExperimentReport:
    """Write `<out>/<experiment>/<run_id>.json` and one `<run_id>.<table>.csv` per table."""
    stem = run_id(cfg)
    writer = ReportWriter(cfg.resolved_output_dir(), file_name=stem)
    report, tables = split_tables(report)
    json_path = writer.path_for(report)
    written = {}
    for name, rows in tables.items():
        path = json_path.with_name(f"{stem}.{name}.csv")
        path.unlink(missing_ok=True)
        CsvWriter(path).write_rows(rows)
        written[name] = path.name
    report = report.model_copy(update={"details": {**report.details, "tables": written}})
    pipeline = Pipeline([writer, LogProcessor("Wrote {experiment} report, pass={passed}", level=logging.INFO, name=__name__)])
    return asyncio.run(pipeline.run_and_return(report))


def execute(cfg: RunConfig) -> ExperimentReport:
    """Run the experiment of a config without persisting it."""
    _log.info("Running %s for %s", cfg.experiment, cfg.params)
    report = COMMANDS[cfg.experiment](cfg)
    run = cfg.model_dump(mode="json", exclude={"output_dir"})
    return report.model_copy(update={"config": {**report.config, "run": run}})


def run(cfg: RunConfig) -> ExperimentReport:
    """Run one experiment and persist its report and raw tables."""
    return persist(execute(cfg), cfg)


def report_path(report: ExperimentReport, cfg: RunConfig) -> Path:
    return ReportWriter(cfg.resolved_output_dir(), file_name=run_id(cfg)).path_for(report)
