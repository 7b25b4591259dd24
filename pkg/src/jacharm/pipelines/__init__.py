from .base_processor import BaseProcessor, FieldNameOrLambda
from .concurrent_processor import ConcurrentProcessor
from .csv_writer import CsvWriter
from .log_processor import LogProcessor
from .pipeline import Pipeline
from .progress_tracker import ProgressTracker
from .ratio_suite import (
    DEFAULT_DRIFT_TOLERANCE,
    RatioProcessor,
    RatioSample,
    StabilityResult,
    Statistic,
    evaluate_ratios,
    run_stability_protocol,
    stability_protocol,
)
from .report_writer import ReportWriter

__all__ = [
    "BaseProcessor",
    "ConcurrentProcessor",
    "CsvWriter",
    "DEFAULT_DRIFT_TOLERANCE",
    "FieldNameOrLambda",
    "LogProcessor",
    "Pipeline",
    "ProgressTracker",
    "RatioProcessor",
    "RatioSample",
    "ReportWriter",
    "StabilityResult",
    "Statistic",
    "evaluate_ratios",
    "run_stability_protocol",
    "stability_protocol",
]
