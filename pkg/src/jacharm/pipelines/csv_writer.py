import csv
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, override

from pydantic import BaseModel

from .base_processor import BaseProcessor, FieldNameOrLambda, FieldNameOrLambda2


def _row(data: Any) -> Dict[str, Any]:
    if isinstance(data, BaseModel):
        return data.model_dump(mode="json")
    return dict(data)


class CsvWriter[T: BaseModel | dict](BaseProcessor[T, T]):
    """Appends items as rows to a CSV file; the header is written with the first row."""

    def __init__(
        self,
        path: Path,
        columns: Optional[Sequence[str]] = None,
        name: str = None,
        input: FieldNameOrLambda = None,
        output: FieldNameOrLambda2 = None,
    ):
        """
        Args:
            path: Path to the CSV file, the suffix `.csv` is added when missing.
            columns: Column order; defaults to the fields of the first item.
        """
        super().__init__(name=name, input=input, output=output)
        path = Path(path)
        self.path = path if path.suffix == ".csv" else path.with_suffix(".csv")
        self.columns: Optional[List[str]] = list(columns) if columns else None

    @override
    async def process_item(self, data: T) -> T:
        self.write_rows([data])
        return data

    def write_rows(self, rows: Sequence[T]) -> Path:
        """Append several rows at once (used for heat maps and convergence curves)."""
        if not rows:
            return self.path
        records = [_row(r) for r in rows]
        if self.columns is None:
            self.columns = list(records[0])
        new_file = not self.path.exists()
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=self.columns, extrasaction="ignore")
            if new_file:
                writer.writeheader()
            writer.writerows(records)
        return self.path
