"""Transcript serialization: canonical JSON text, byte-identical across runs."""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

from gmpy2 import mpq

from ..audit.document import TranscriptDocument, load_document
from ..errors import ParseError
from ..exact.bounds import ModulusBound
from ..exact.gaussian import GaussianRational, to_rational
from .models import CapEntry, ConstructionConfig, StepRecord, Transcript, WindowRecord


def dumps(transcript: Transcript) -> str:
    """Canonical JSON text with sorted keys and a trailing newline."""
    return json.dumps(transcript.to_json(), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def write_transcript(transcript: Transcript, path: Union[str, Path]) -> Path:
    """
    Write a transcript to disk.

    Args:
        transcript: Finished run
        path: Output file; parent directories are created

    Returns:
        The written path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(transcript), encoding="utf-8")
    return path


def _window_from_json(k: int, data: Optional[Dict[str, Any]]) -> Optional[WindowRecord]:
    if data is None:
        return None
    return WindowRecord(
        k=k,
        t=to_rational(data["t"]),
        tau=to_rational(data["tau"]),
        parent=data["parent"],
        derivative_bound=to_rational(data["derivative_bound"]),
        bounds=[to_rational(b) for b in data["bounds"]],
    )


def transcript_from_document(document: TranscriptDocument) -> Transcript:
    """
    Rebuild the in-memory run from a parsed document.

    Stored derived fields are taken as written; run the verifier first when
    they must be trusted.

    Raises:
        ParseError: If a record lacks a derived field
    """
    config = ConstructionConfig(
        n=document.n,
        m=document.m,
        steps=document.steps,
        r0=document.r0,
        envelope=document.envelope,
        epsilon=document.epsilon,
        directions=list(document.directions),
        variant=document.variant,
        targets=document.targets,
        root_half_width=document.root_half_width if document.root_half_width is not None else mpq(1, 4),
    )
    records = []
    for index, raw in enumerate(document.records):
        k = index + 1
        try:
            records.append(
                StepRecord(
                    k=k,
                    target_index=int(raw["target_index"]),
                    direction_index=raw["direction_index"],
                    ell=int(raw["ell"]),
                    n=int(raw["n"]),
                    center=tuple(GaussianRational.from_json(x) for x in raw["center"]),
                    radius_prev=to_rational(raw["radius_prev"]),
                    radius=to_rational(raw["radius"]),
                    target_radius=to_rational(raw["target_radius"]),
                    epsilon=to_rational(raw["epsilon"]),
                    pieces=list(document.pieces[index]),
                    cond1=[ModulusBound(to_rational(b)) for b in raw["cond1"]],
                    cond2=[ModulusBound(to_rational(b)) for b in raw["cond2"]],
                    caps=[[CapEntry(int(d), to_rational(b), to_rational(c)) for d, b, c in row] for row in raw["caps"]],
                    window=_window_from_json(k, raw.get("window")),
                )
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"Record {k} is missing derived data: {e}", step=k) from e
    return Transcript(config, records, document.partial_sums())


def load_transcript(path: Union[str, Path]) -> Transcript:
    """Read a transcript file back into a Transcript."""
    return transcript_from_document(load_document(path))
