import json

import pytest

from jacharm.cli.main import EXIT_FAIL, EXIT_NUMERICAL, EXIT_PASS, EXIT_USAGE, build_parser, main
from jacharm.exceptions import ConvergenceError
from jacharm.model import ExperimentReport, ParameterPair


def test_every_experiment_has_a_subcommand():
    parser = build_parser()
    args = parser.parse_args(["norms", "--p", "2", "--s", "1", "--alpha", "0.5"])
    assert args.command == "norms"
    assert args.alpha == 0.5
    with pytest.raises(SystemExit):
        parser.parse_args(["unknown"])


def test_expand_run(tmp_path, capsys):
    # When: a small expansion is run from the command line
    code = main(["expand", "--n-terms", "8", "--alpha", "-0.5", "--beta", "-0.5", "--output-dir", str(tmp_path)])
    # Then: it passes and the report lands under the output root
    assert code == EXIT_PASS
    reports = list((tmp_path / "expand").glob("*.json"))
    assert len(reports) == 1
    data = json.loads(reports[0].read_text())
    assert data["params"]["alpha"] == -0.5
    assert data["config"]["run"]["n_terms"] == 8
    assert "pass=True" in capsys.readouterr().out


def test_config_file_with_flag_override(tmp_path):
    config = tmp_path / "pencil.json"
    config.write_text(json.dumps({"experiment": "pencil", "p": 3.0}))
    code = main(["pencil", "--config", str(config), "--alpha", "-0.75", "--output-dir", str(tmp_path)])
    assert code in (EXIT_PASS, EXIT_FAIL)
    data = json.loads(next((tmp_path / "pencil").glob("*.json")).read_text())
    assert data["params"]["alpha"] == -0.75


def test_missing_required_field(tmp_path, capsys):
    assert main(["norms", "--p", "2", "--output-dir", str(tmp_path)]) == EXIT_USAGE
    assert "needs s" in capsys.readouterr().err


def test_invalid_parameter(tmp_path):
    assert main(["expand", "--alpha", "-1.5", "--output-dir", str(tmp_path)]) == EXIT_USAGE


def test_lemma_check_rejects_bad_exponent(tmp_path):
    args = ["lemma36", "--eta", "1.5", "--xi", "-2", "--gamma", "0.5", "--output-dir", str(tmp_path)]
    assert main(args) == EXIT_USAGE


def test_numerical_breakdown(mocker, tmp_path):
    mocker.patch("jacharm.cli.main.run", side_effect=ConvergenceError("tail did not converge"))
    assert main(["poisson", "--output-dir", str(tmp_path)]) == EXIT_NUMERICAL


def test_failed_run(mocker, tmp_path):
    report = ExperimentReport(experiment="poisson", params=ParameterPair(alpha=0.0, beta=0.0), passed=False)
    mocker.patch("jacharm.cli.main.run", return_value=report)
    assert main(["poisson", "--output-dir", str(tmp_path)]) == EXIT_FAIL


def test_suite_command(mocker, tmp_path):
    report = ExperimentReport(experiment="suite-smoke", params=ParameterPair(alpha=0.0, beta=0.0), passed=True)
    run_suite = mocker.patch("jacharm.cli.main.suite", return_value=report)
    code = main(["suite", "smoke", "--seed", "4", "--output-dir", str(tmp_path)])
    assert code == EXIT_PASS
    run_suite.assert_called_once_with("smoke", seed=4, samples=None, max_concurrent=None, output_dir=tmp_path)
    assert (tmp_path / "suite-smoke" / "summary.json").exists()
