import csv
import json

from jacharm.cli import Experiment, RunConfig, execute, report_path, run, run_id, split_tables
from jacharm.model import ExperimentReport, ParameterPair


def test_run_id_is_stable():
    cfg = RunConfig(experiment=Experiment.EXPAND, n_terms=8)
    # Then: equal configs share a stem, the output directory does not enter it
    assert run_id(cfg) == run_id(RunConfig(experiment=Experiment.EXPAND, n_terms=8, output_dir="elsewhere"))
    assert run_id(cfg) != run_id(cfg.with_overrides(seed=1))
    assert run_id(cfg).startswith("expand-")


def test_split_tables():
    report = ExperimentReport(
        experiment="riesz",
        params=ParameterPair(alpha=0.0, beta=0.0),
        details={
            "value": 1.2,
            "ratios": [{"index": 0, "ratio": 1.0}, {"index": 1, "ratio": 1.2}],
            "expansion": {"alpha": 0.0, "beta": 0.0, "coeffs": [{"re": 1.0, "im": 0.0}, {"re": 0.5, "im": -0.5}]},
        },
    )
    stripped, tables = split_tables(report)
    # Then: list-valued tables leave the report, scalars stay
    assert stripped.details == {"value": 1.2}
    assert tables["ratios"][1]["ratio"] == 1.2
    assert tables["expansion"] == [{"n": 0, "re": 1.0, "im": 0.0}, {"n": 1, "re": 0.5, "im": -0.5}]


def test_execute_embeds_resolved_config():
    cfg = RunConfig(experiment=Experiment.EXPAND, n_terms=8)
    report = execute(cfg)
    assert report.passed
    assert report.config["run"]["n_terms"] == 8
    assert "output_dir" not in report.config["run"]


def test_equivalence_runs_on_singular_pair():
    cfg = RunConfig(
        experiment=Experiment.EQUIV,
        params=ParameterPair(alpha=-0.5, beta=-0.5),
        p=2.0,
        gamma=0.5,
        k=1,
        n_terms=6,
        samples=3,
        seed=1,
        method="gram",
    )
    # When: executed through the command table
    report = execute(cfg)
    # Then: the modified potential space and the shifted square function are used
    assert report.details["flavor"] == "modified"
    assert report.details["tilde"] is True
    assert report.passed is True


def test_run_persists_report_and_tables(results_dir):
    cfg = RunConfig(experiment=Experiment.EXPAND, params=ParameterPair(alpha=-0.5, beta=-0.5), function="cosine", n_terms=8)
    # When: the run is persisted under the default output root
    report = run(cfg)
    path = report_path(report, cfg)
    # Then: the JSON names its CSV tables and the coefficients are in the table
    assert path == results_dir / "expand" / f"{run_id(cfg)}.json"
    data = json.loads(path.read_text())
    assert data["details"]["tables"] == {"expansion": f"{run_id(cfg)}.expansion.csv"}
    with (path.parent / data["details"]["tables"]["expansion"]).open() as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 8
    # cos is phi_1 up to the factor sqrt(pi / 2)
    assert abs(float(rows[1]["re"])) > 1.0
    assert abs(float(rows[2]["re"])) < 1e-8


def test_rerun_overwrites_tables(results_dir):
    cfg = RunConfig(experiment=Experiment.EXPAND, n_terms=4)
    run(cfg)
    report = run(cfg)
    table = report_path(report, cfg).with_name(f"{run_id(cfg)}.expansion.csv")
    with table.open() as f:
        assert len(list(csv.DictReader(f))) == 4
