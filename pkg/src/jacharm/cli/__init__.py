from .commands import COMMANDS, execute, persist, report_path, run, run_id, split_tables
from .config import TEST_FUNCTIONS, AuditKind, Experiment, RunConfig, resolve_output_dir
from .suite import SuiteName, suite, suite_configs, write_suite_report

__all__ = [
    "AuditKind",
    "COMMANDS",
    "Experiment",
    "RunConfig",
    "SuiteName",
    "TEST_FUNCTIONS",
    "execute",
    "persist",
    "report_path",
    "resolve_output_dir",
    "run",
    "run_id",
    "split_tables",
    "suite",
    "suite_configs",
    "write_suite_report",
]
