"""
Independent transcript verifier.

Every derived field of every record is rebuilt from the header, each n_k,
each S_k and the window tree, then compared with what the transcript stores.
Only exact arithmetic, the schedule and the growth envelopes are used here.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple, Union

from gmpy2 import mpq

from ..errors import CertificateMismatch
from ..exact.bounds import DEFAULT_BITS, disc_sup_bound, modulus_upper, round_down, translation_error_bound
from ..exact.gaussian import GaussianRational, ceil_rational, format_rational, unit_from_half_tangent
from ..exact.poly import DensePoly
from ..schedule.pairing import PAIRING_ID
from ..schedule.variants import schedule_index
from ..utils.logger import get_logger
from .document import Polynomial, TranscriptDocument, load_document

WINDOW_DECAY = mpq(15, 16)


@dataclass
class VerificationReport:
    """Outcome of a successful verification."""

    steps: int
    final_radius: Any
    checked_fields: int = 0
    windows: Dict[int, Dict[str, Any]] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "steps": self.steps,
            "final_radius": format_rational(self.final_radius),
            "checked_fields": self.checked_fields,
        }


def _degree_profile(piece: Polynomial, bits: int) -> Dict[int, Any]:
    out: Dict[int, Any] = {}
    for degree, coef in piece.iter_terms():
        out[degree] = out.get(degree, mpq(0)) + modulus_upper(coef, bits).value
    return out


def _origin(piece: Polynomial) -> Any:
    return GaussianRational(0) if isinstance(piece, DensePoly) else [GaussianRational(0)] * piece.nvars


class TranscriptVerifier:
    """Rebuilds and compares a transcript record by record."""

    def __init__(self, document: TranscriptDocument, bits: int = DEFAULT_BITS):
        """
        Initialize the verifier.

        Args:
            document: Parsed transcript
            bits: Rounding precision the run used
        """
        self.document = document
        self.bits = bits
        self.logger = get_logger(__name__)
        self.checked = 0

    def _compare(self, step: Optional[int], name: str, expected: Any, stored: Any) -> None:
        self.checked += 1
        if expected != stored:
            raise CertificateMismatch(
                f"Field '{name}' does not match its recomputed value",
                step=step,
                details={"field": name, "expected": expected, "stored": stored},
            )

    def _fail(self, step: int, name: str, message: str) -> None:
        raise CertificateMismatch(message, step=step, details={"field": name})

    def verify_header(self) -> None:
        doc = self.document
        expected = {
            "enumeration": doc.targets.identifier,
            "pairing": PAIRING_ID,
            "variant": doc.variant.kind,
            "n": doc.n,
            "m": doc.m,
            "steps": doc.steps,
            "r0": format_rational(doc.r0),
            "epsilon": doc.epsilon.to_dict(),
            "envelope": doc.envelope.to_dict(),
            "directions": [[x.to_json() for x in d] for d in doc.directions],
            "targets": doc.targets.to_json(),
        }
        if doc.is_cantor:
            expected["cantor"] = {"root_half_width": format_rational(doc.root_half_width)}
        for key in sorted(set(expected) | set(doc.header)):
            self._compare(None, f"header.{key}", expected.get(key), doc.header.get(key))
        for i, d in enumerate(doc.directions):
            if sum((x.norm2() for x in d), mpq(0)) != 1 or len(d) != doc.n:
                raise CertificateMismatch(
                    f"Direction {i + 1} is not an exact unit vector", details={"field": "header.directions"}
                )
        if len(doc.records) != doc.steps:
            raise CertificateMismatch(
                f"Transcript has {len(doc.records)} records, header says {doc.steps}",
                details={"field": "records"},
            )

    def _window_placement(self, k: int, windows: Dict[int, Dict[str, Any]]) -> Tuple[Any, Optional[int], Any]:
        if k == 1:
            return mpq(0), None, self.document.root_half_width
        parent = windows[k // 2]
        offset = parent["tau"] / 2
        t = parent["t"] - offset if k % 2 == 0 else parent["t"] + offset
        return t, k // 2, min(parent["tau"] / 4, WINDOW_DECAY * windows[k - 1]["tau"])

    def verify(self) -> VerificationReport:
        """
        Verify the whole transcript.

        Returns:
            VerificationReport on success

        Raises:
            CertificateMismatch: On the first field or inequality that does not re-verify
        """
        doc = self.document
        bits = self.bits
        self.verify_header()
        partials = [doc.zero() for _ in range(doc.m)]
        radius_prev = doc.r0
        degree_hi = 0
        windows: Dict[int, Dict[str, Any]] = {}
        total = doc.steps

        for index, record in enumerate(doc.records):
            k = index + 1
            pieces = doc.pieces[index]
            target_index, direction_index = schedule_index(k, doc.variant)
            target = doc.targets.item(target_index)
            ell = max(degree_hi, target.degree)
            m_lo, m_hi = ell + 1, 2 * ell + 1
            epsilon = doc.epsilon(k)
            n = int(record["n"])
            if n <= radius_prev + target.radius:
                self._fail(k, "n", f"Center {n} is not beyond R_prev + r̂")

            if doc.is_cantor:
                t, parent, tau_cap = self._window_placement(k, windows)
                direction: Tuple[GaussianRational, ...] = (unit_from_half_tangent(t),)
            else:
                direction = doc.directions[direction_index - 1]
            center = tuple(x * n for x in direction)
            radius = mpq(ceil_rational(n + target.radius) + 1)

            caps, cond1, cond2 = [], [], []
            count = m_hi - m_lo + 1
            for j, piece in enumerate(pieces):
                entries = []
                for degree, bound in sorted(_degree_profile(piece, bits).items()):
                    if not m_lo <= degree <= m_hi:
                        self._fail(k, "pieces", f"Piece {j + 1} has a term of degree {degree} outside [{m_lo}, {m_hi}]")
                    cap = min(doc.envelope.coefficient(degree), epsilon / (count * radius_prev ** degree))
                    if bound > cap:
                        self._fail(k, "caps", f"Coefficient cap fails at degree {degree}")
                    entries.append([degree, format_rational(bound), format_rational(cap)])
                caps.append(entries)
                b1 = disc_sup_bound(piece, _origin(piece), radius_prev, bits) if piece else None
                value1 = b1.value if b1 is not None else mpq(0)
                shift = center[0] if doc.n == 1 else list(center)
                value2 = translation_error_bound(partials[j] + piece, target.polys[j], shift, target.radius, bits).value
                if value1 > epsilon:
                    self._fail(k, "cond1", f"cond1 bound exceeds ε_{k}")
                if value2 > epsilon:
                    self._fail(k, "cond2", f"cond2 bound exceeds ε_{k}")
                cond1.append(value1)
                cond2.append(value2)
            partials = [g + s for g, s in zip(partials, pieces)]

            expected = {
                "k": k,
                "target_index": target_index,
                "direction_index": direction_index,
                "ell": ell,
                "m_lo": m_lo,
                "m_hi": m_hi,
                "n": str(n),
                "center": [x.to_json() for x in center],
                "center_norm": format_rational(n),
                "radius_prev": format_rational(radius_prev),
                "radius": format_rational(radius),
                "target_radius": format_rational(target.radius),
                "epsilon": format_rational(epsilon),
                "pieces": [p.to_json() for p in pieces],
                "cond1": [format_rational(v) for v in cond1],
                "cond2": [format_rational(v) for v in cond2],
                "caps": caps,
                "window": None,
            }

            if doc.is_cantor:
                window = self._rebuild_window(k, t, parent, tau_cap, partials, center[0], n, target.radius, epsilon, cond2)
                self._check_window_tree(k, window, windows)
                windows[k] = window
                expected["window"] = {
                    "t": format_rational(window["t"]),
                    "tau": format_rational(window["tau"]),
                    "delta": format_rational(2 * window["tau"]),
                    "parent": parent,
                    "derivative_bound": format_rational(window["derivative_bound"]),
                    "bounds": [format_rational(b) for b in window["bounds"]],
                }

            for key in sorted(set(expected) | set(record)):
                self._compare(k, key, expected.get(key), record.get(key))
            self.logger.info(f"✓ Step {k}/{total} verified")
            radius_prev = radius
            degree_hi = m_hi

        return VerificationReport(total, radius_prev, self.checked, windows)

    def _rebuild_window(
        self,
        k: int,
        t: Any,
        parent: Optional[int],
        tau_cap: Any,
        partials: List[Polynomial],
        center: GaussianRational,
        modulus: int,
        target_radius: Any,
        epsilon: Any,
        cond2: List[Any],
    ) -> Dict[str, Any]:
        enlarged = target_radius + 2 * modulus * tau_cap
        derivative_bound = mpq(0)
        for g in partials:
            d = g.derivative()
            if d:
                derivative_bound = max(derivative_bound, disc_sup_bound(d, center, enlarged, self.bits).value)
        if derivative_bound == 0:
            tau = tau_cap
        else:
            tau = min(tau_cap, round_down(epsilon / (2 * modulus * derivative_bound), self.bits))
        bounds = [b + derivative_bound * 2 * modulus * tau for b in cond2]
        if any(b > 2 * epsilon for b in bounds):
            self._fail(k, "window", f"Window bound exceeds 2ε_{k}")
        return {"t": t, "tau": tau, "parent": parent, "derivative_bound": derivative_bound, "bounds": bounds}

    def _check_window_tree(self, k: int, window: Dict[str, Any], windows: Dict[int, Dict[str, Any]]) -> None:
        if window["parent"] is None:
            return
        lo, hi = window["t"] - window["tau"], window["t"] + window["tau"]
        parent = windows[window["parent"]]
        if not (parent["t"] - parent["tau"] < lo and hi < parent["t"] + parent["tau"]):
            self._fail(k, "window", f"Window {k} is not nested in its parent")
        sibling = windows.get(k ^ 1)
        if sibling is not None and not (hi <= sibling["t"] - sibling["tau"] or sibling["t"] + sibling["tau"] <= lo):
            self._fail(k, "window", f"Window {k} overlaps its sibling")
        if window["tau"] >= windows[k - 1]["tau"]:
            self._fail(k, "window", "Window half-widths must strictly decrease")


def verify_transcript(source: Union[str, TranscriptDocument], bits: int = DEFAULT_BITS) -> VerificationReport:
    """
    Verify a transcript file or parsed document.

    Raises:
        FileNotFoundError: If the file does not exist
        ParseError: If the file is not a valid transcript
        CertificateMismatch: If any stored field fails to re-verify
    """
    document = source if isinstance(source, TranscriptDocument) else load_document(source)
    return TranscriptVerifier(document, bits).verify()
