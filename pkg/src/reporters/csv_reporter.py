"""CSV reporter: a header row, then one line per table row."""

import csv
import sys
from pathlib import Path
from typing import Optional, TextIO, Union

from ..analyzers.base import Table
from ..utils.logger import get_logger
from .base import Reporter


class CsvReporter(Reporter):
    """Writes tables as CSV with the table's column order."""

    def __init__(self, lineterminator: str = "\n"):
        """
        Initialize the reporter.

        Args:
            lineterminator: Line ending; fixed so output is byte-identical across platforms
        """
        self.lineterminator = lineterminator
        self.logger = get_logger(__name__)

    def write(self, table: Table, stream: TextIO) -> int:
        writer = csv.DictWriter(
            stream,
            fieldnames=table.columns,
            restval="",
            extrasaction="raise",
            lineterminator=self.lineterminator,
        )
        writer.writeheader()
        for row in table.rows:
            writer.writerow(row)
        self.logger.debug(f"Wrote {len(table.rows)} rows of table '{table.name}'")
        return len(table.rows)

    def write_to(self, table: Table, path: Optional[Union[str, Path]] = None) -> int:
        """
        Write a table to a file, or to stdout when no path is given.

        Returns:
            Number of data rows written
        """
        if path is None:
            return self.write(table, sys.stdout)
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            count = self.write(table, f)
        self.logger.info(f"✓ Table '{table.name}' written to {path}")
        return count
