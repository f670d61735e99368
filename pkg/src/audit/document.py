"""Parsed transcript documents, rebuilt from raw JSON without the constructor."""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from ..errors import ParseError
from ..exact.gaussian import GaussianRational, to_rational
from ..exact.multipoly import MultiPoly
from ..exact.poly import DensePoly
from ..growth.envelope import GrowthEnvelope, build_envelope
from ..schedule.enumeration import TargetFamily
from ..schedule.epsilon import EpsilonRule
from ..schedule.variants import CANTOR, ScheduleVariant

FORMAT = "slowgrowth-transcript"
VERSION = 1

Polynomial = Union[DensePoly, MultiPoly]

REQUIRED_HEADER = ("enumeration", "pairing", "variant", "n", "m", "steps", "r0", "epsilon", "envelope", "directions")
REQUIRED_RECORD = ("k", "n", "pieces")


@dataclass
class TranscriptDocument:
    """Header inputs, raw records and the parsed pieces S_k."""

    raw: Dict[str, Any]
    n: int
    m: int
    steps: int
    r0: Any
    variant: ScheduleVariant
    epsilon: EpsilonRule
    envelope: GrowthEnvelope
    directions: List[Tuple[GaussianRational, ...]]
    targets: TargetFamily
    root_half_width: Optional[Any] = None
    pieces: List[List[Polynomial]] = field(default_factory=list)

    @property
    def header(self) -> Dict[str, Any]:
        return self.raw["header"]

    @property
    def records(self) -> List[Dict[str, Any]]:
        return self.raw["records"]

    @property
    def is_cantor(self) -> bool:
        return self.variant.kind == CANTOR

    def zero(self) -> Polynomial:
        return DensePoly.zero() if self.n == 1 else MultiPoly.zero(self.n)

    def centers(self) -> List[int]:
        return [int(r["n"]) for r in self.records]

    def partial_sums(self, upto: Optional[int] = None) -> List[Polynomial]:
        """G_upto per component (all steps by default)."""
        upto = len(self.pieces) if upto is None else upto
        sums = [self.zero() for _ in range(self.m)]
        for pieces in self.pieces[:upto]:
            sums = [g + s for g, s in zip(sums, pieces)]
        return sums

    def component_pieces(self, j: int) -> List[Polynomial]:
        return [pieces[j] for pieces in self.pieces]


def _parse_poly(data: Any, n: int) -> Polynomial:
    return DensePoly.from_json(data) if n == 1 else MultiPoly.from_json(n, data)


def parse_document(raw: Any) -> TranscriptDocument:
    """
    Validate the structure of a decoded transcript and parse its inputs.

    Raises:
        ParseError: On unknown formats, missing keys or malformed values
    """
    if not isinstance(raw, dict):
        raise ParseError("Transcript must be a JSON object")
    if raw.get("format") != FORMAT:
        raise ParseError(f"Unknown transcript format {raw.get('format')!r}", details={"expected": FORMAT})
    if raw.get("version") != VERSION:
        raise ParseError(f"Unsupported transcript version {raw.get('version')!r}", details={"expected": VERSION})
    header = raw.get("header")
    records = raw.get("records")
    if not isinstance(header, dict) or not isinstance(records, list):
        raise ParseError("Transcript needs a 'header' object and a 'records' list")
    for key in REQUIRED_HEADER:
        if key not in header:
            raise ParseError(f"Missing '{key}' in transcript header", details={"field": key})

    try:
        n, m = int(header["n"]), int(header["m"])
        directions = [tuple(GaussianRational.from_json(x) for x in d) for d in header["directions"]]
        cantor = header.get("cantor")
        document = TranscriptDocument(
            raw=raw,
            n=n,
            m=m,
            steps=int(header["steps"]),
            r0=to_rational(header["r0"]),
            variant=ScheduleVariant(header["variant"], max(len(directions), 1)),
            epsilon=EpsilonRule.from_dict(header["epsilon"]),
            envelope=build_envelope(header["envelope"]),
            directions=directions,
            targets=TargetFamily.from_json(header.get("targets"), n, m),
            root_half_width=to_rational(cantor["root_half_width"]) if cantor else None,
        )
        for index, record in enumerate(records):
            for key in REQUIRED_RECORD:
                if key not in record:
                    raise ParseError(
                        f"Missing '{key}' in record {index + 1}", step=index + 1, details={"field": key}
                    )
            if int(record["n"]) < 1:
                raise ParseError(f"Record {index + 1} has a nonpositive center", step=index + 1)
            pieces = [_parse_poly(p, n) for p in record["pieces"]]
            if len(pieces) != m:
                raise ParseError(f"Record {index + 1} has {len(pieces)} pieces, expected {m}", step=index + 1)
            document.pieces.append(pieces)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise ParseError(f"Malformed transcript: {e}") from e
    return document


def loads_document(text: str) -> TranscriptDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Transcript is not valid JSON: {e.msg}", details={"line": e.lineno}) from e
    return parse_document(raw)


def load_document(path: Union[str, Path]) -> TranscriptDocument:
    """
    Read and parse a transcript file.

    Raises:
        FileNotFoundError: If the file does not exist
        ParseError: If its content is not a valid transcript
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Transcript file not found: {path}")
    return loads_document(path.read_text(encoding="utf-8"))

