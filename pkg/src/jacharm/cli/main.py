"""Command line entry point: `jacharm <experiment> [options]` and `jacharm suite <name>`.

Exit codes: 0 pass (or exploratory), 1 the experiment ran and failed its criterion,
2 invalid configuration or parameters, 3 numerical breakdown.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from ..exceptions import ConfigError, ConvergenceError, ParameterError, ResolutionError
from ..fractional.square_functions import Method
from ..kernels.audits import GridConfig
from ..model import ExperimentReport, ParameterPair
from ..operators.potentials import Flavor
from .commands import report_path, run
from .config import TEST_FUNCTIONS, AuditKind, Experiment, RunConfig
from .suite import SuiteName, suite, write_suite_report

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

HELP = {
    Experiment.EXPAND: "Fourier-Jacobi coefficients of a test function with the round-trip residual",
    Experiment.POISSON: "Semigroup law, contraction, maximal function and the D identity on random expansions",
    Experiment.GFUNC: "L^2 isometry, polarized isometry and composition identity of the square functions",
    Experiment.CAPUTO_ORACLE: "Closed-form Caputo derivatives against their quadrature",
    Experiment.NORMS: "L^p, sup and potential-space norms of a test function",
    Experiment.PENCIL: "L^p norm of phi_0 on shrinking intervals",
    Experiment.STRUCT: "Continuity L^{p,s} -> L^{p,r} and the isometric isomorphism between them",
    Experiment.RIESZ: "Boundedness of the Riesz-Jacobi transform of order k on L^{p,s}",
    Experiment.DERIVATIVE: "Boundedness of D^(k) from L^{p,s} to L^{p,s-k}",
    Experiment.EMBED: "Embedding of L^{p,s} into L^q",
    Experiment.EQUIV: "Square-function characterization of the potential spaces",
    Experiment.GNORM: "L^p boundedness of the fractional square function",
    Experiment.GK_MONOTONICITY: "Monotonicity of g^{gamma,k} in k",
    Experiment.WEIGHTED_G: "Weighted L^p bound of the square function in the polynomial setting",
    Experiment.SCHRODINGER: "Pointwise convergence of the Schrodinger evolution as t -> 0",
    Experiment.MAXIMAL: "Local maximal estimate of the Schrodinger evolution",
    Experiment.STRICHARTZ: "Mixed-norm (Strichartz) estimate on [0, 2 pi]",
    Experiment.EXTENSION: "Mixed-norm estimate with time exponent q > 2",
    Experiment.KERNEL_AUDIT: "Growth or gradient estimate of the square-function kernel on a grid",
    Experiment.LEMMA36: "Two-branch bound of the nested kernel integral",
}


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="JSON run configuration; flags override its fields")
    parser.add_argument("--output-dir", type=Path, help="Output root (default: $JACHARM_OUTPUT_DIR or ./results)")
    parser.add_argument("--seed", type=int, help="Sampler seed")
    parser.add_argument("--samples", type=int, help="Monte-Carlo sample count")
    parser.add_argument("--max-concurrent", type=int, help="Worker threads")
    parser.add_argument(
        "--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Logging level (default: WARNING)"
    )


def _experiment_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", type=float, help="Jacobi parameter alpha > -1")
    parser.add_argument("--beta", type=float, help="Jacobi parameter beta > -1")
    parser.add_argument("--p", type=float, help="Spatial exponent")
    parser.add_argument("--q", type=float, help="Target or time exponent ('inf' allowed)")
    parser.add_argument("--r", type=float, help="Smaller order of the structural comparison")
    parser.add_argument("--s", type=float, help="Potential space order")
    parser.add_argument("--gamma", type=float, help="Fractional order")
    parser.add_argument("--k", type=int, help="Integer order")
    parser.add_argument("--l", type=int, help="Larger integer order of the monotonicity comparison")
    parser.add_argument("--flavor", choices=[str(f) for f in Flavor], help="Potential family")
    parser.add_argument("--method", choices=[str(m) for m in Method], help="t-integral evaluation")
    parser.add_argument("--n-terms", type=int, help="Truncation N")
    parser.add_argument("--resolution", type=int, help="Quadrature size")
    parser.add_argument("--function", choices=sorted(TEST_FUNCTIONS), help="Named test function")
    parser.add_argument("--times", type=float, nargs=2, metavar=("T", "S"), help="Semigroup times")
    parser.add_argument("--n-interval", type=int, help="Interval index of the maximal estimate")
    parser.add_argument("--regime", choices=["++", "+-", "-+", "--"], help="Sign regime of the kernel audit")
    parser.add_argument("--audit", choices=[str(a) for a in AuditKind], help="Kernel estimate")
    parser.add_argument("--grid-points", type=int, help="Kernel audit grid nodes per axis")
    parser.add_argument("--t-floor", type=float, help="Lower end of the kernel t-integral")
    parser.add_argument("--eta", type=float, help="Exponent eta of the nested integral")
    parser.add_argument("--xi", type=float, help="Exponent xi of the nested integral")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jacharm", description="Jacobi harmonic analysis experiments.")
    commands = parser.add_subparsers(dest="command", required=True)
    for experiment in Experiment:
        sub = commands.add_parser(str(experiment), help=HELP[experiment], description=HELP[experiment])
        _experiment_options(sub)
        _common(sub)
    sub = commands.add_parser("suite", help="Run a named suite of experiments")
    sub.add_argument("name", choices=[str(s) for s in SuiteName], help="Suite name")
    _common(sub)
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    names = [
        "p", "q", "r", "s", "gamma", "k", "l", "flavor", "method", "n_terms", "resolution", "function",
        "n_interval", "regime", "audit", "eta", "xi", "seed", "samples", "max_concurrent", "output_dir",
    ]
    values = {name: getattr(args, name, None) for name in names}
    if getattr(args, "times", None):
        values["times"] = tuple(args.times)
    return values


def _config(args: argparse.Namespace) -> RunConfig:
    overrides = {"experiment": args.command, **_overrides(args)}
    if args.config:
        cfg = RunConfig.from_file(args.config, **overrides)
    else:
        cfg = RunConfig.model_validate({k: v for k, v in overrides.items() if v is not None})
    if args.alpha is not None or args.beta is not None:
        alpha = cfg.params.alpha if args.alpha is None else args.alpha
        beta = cfg.params.beta if args.beta is None else args.beta
        cfg = cfg.with_overrides(params=ParameterPair(alpha=alpha, beta=beta))
    grid = {"points": args.grid_points, "t_floor": args.t_floor}
    if any(v is not None for v in grid.values()):
        update = {k: v for k, v in grid.items() if v is not None}
        cfg = cfg.with_overrides(grid=GridConfig.model_validate({**cfg.grid.model_dump(), **update}))
    return cfg


def exit_code(report: ExperimentReport) -> int:
    return EXIT_FAIL if report.passed is False else EXIT_PASS


def _summary(report: ExperimentReport, path: Path) -> str:
    lines = [f"{report.experiment} {report.params}: pass={report.passed} -> {path}"]
    for key, value in report.details.items():
        if isinstance(value, (bool, int, float, str)):
            lines.append(f"  {key} = {value}")
    return "\n".join(lines)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "suite":
            overrides = {
                "seed": args.seed,
                "samples": args.samples,
                "max_concurrent": args.max_concurrent,
                "output_dir": args.output_dir,
            }
            report = suite(args.name, **overrides)
            path = write_suite_report(report, args.output_dir)
        else:
            cfg = _config(args)
            report = run(cfg)
            path = report_path(report, cfg)
    except (ConfigError, ParameterError, ValidationError) as e:
        print(f"[error] {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ResolutionError, ConvergenceError) as e:
        print(f"[numerical failure] {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    print(_summary(report, path))
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())
