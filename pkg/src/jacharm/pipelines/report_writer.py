import logging
from pathlib import Path
from typing import Callable, Union

from ..model import ExperimentReport
from .base_processor import BaseProcessor


class ReportWriter(BaseProcessor[ExperimentReport, ExperimentReport]):
    """Write experiment reports to `<dir_path>/<experiment>/<file_name>.json`."""

    _log = logging.getLogger(__name__)

    def __init__(self, dir_path: Path, file_name: Union[str, Callable[[ExperimentReport], str]], **kwargs):
        super().__init__(**kwargs)
        self.dir_path = Path(dir_path)
        self.file_name = file_name

    def path_for(self, report: ExperimentReport) -> Path:
        file_name = self.get_value(self.file_name, report) if callable(self.file_name) else self.file_name
        return self.dir_path / report.experiment / f"{file_name}.json"

    async def process_item(self, data: ExperimentReport) -> ExperimentReport:
        file_path = self.path_for(data)
        file_path.parent.mkdir(parents=True, exist_ok=True)
        file_path.write_text(data.to_json())
        self._log.debug("Processor %s wrote %s", self.name, file_path)
        return data
