"""Abstract base class for transcript analyses."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List

from ..audit.document import TranscriptDocument


@dataclass
class Table:
    """Named result table: column order plus one dict per row."""

    name: str
    columns: List[str]
    rows: List[Dict[str, Any]] = field(default_factory=list)


class TranscriptAnalyzer(ABC):
    """Abstract base class for analyses run on a parsed transcript."""

    name: str = ""

    @abstractmethod
    def analyze(self, document: TranscriptDocument, params: Dict[str, str]) -> Table:
        """
        Analyze a transcript and return a result table.

        Args:
            document: Parsed transcript
            params: Analysis parameters as raw KEY=VAL strings

        Returns:
            Table ready for a reporter

        Raises:
            ValueError: If a parameter is invalid for this analysis
            SlowgrowthError: If the underlying computation fails
        """
        pass
