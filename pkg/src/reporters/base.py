"""Abstract base class for table reporters."""

from abc import ABC, abstractmethod
from typing import TextIO

from ..analyzers.base import Table


class Reporter(ABC):
    """Abstract base class for writing analysis tables."""

    @abstractmethod
    def write(self, table: Table, stream: TextIO) -> int:
        """
        Write a table to a text stream.

        Args:
            table: Table to write
            stream: Open text stream

        Returns:
            Number of data rows written

        Raises:
            Exception: If writing fails
        """
        pass
