"""Report analyses: each turns a parsed transcript into one CSV-ready table."""

import math
from typing import Any, Dict, List, Optional, Type

from ..audit.document import TranscriptDocument
from ..construction.growth_audit import growth_audit
from ..construction.transcript import transcript_from_document
from ..construction.witness import witness
from ..exact.gaussian import format_rational, to_rational
from ..exact.poly import DensePoly
from ..growth.psi import SlowPsi
from ..utils.logger import get_logger
from .avoidance import avoidance_shift
from .base import Table, TranscriptAnalyzer
from .characteristic import cartan_T, nevanlinna_gap, projective_T, torus_T, torus_T_area, torus_T_radial
from .covers import direction_covers, zeros_by_annulus
from .quadrature import RadialQuadrature, log_rational
from .zeros import Annulus, Disc, count_zeros

MAX_DEFAULT_RADII = 32


def param_radii(params: Dict[str, str], default: List[Any]) -> List[Any]:
    raw = params.get("radii")
    if not raw:
        return default
    return [to_rational(x) for x in raw.split(",") if x.strip()]


def param_int(params: Dict[str, str], key: str, default: int) -> int:
    raw = params.get(key)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise ValueError(f"Parameter '{key}' must be an integer, got {raw!r}") from e


def param_float(params: Dict[str, str], key: str, default: float) -> float:
    raw = params.get(key)
    return default if raw is None else float(to_rational(raw))


def param_rational(params: Dict[str, str], key: str, default: Any) -> Any:
    raw = params.get(key)
    return default if raw is None else to_rational(raw)


def final_radius(document: TranscriptDocument) -> Any:
    records = document.records
    return to_rational(records[-1]["radius"]) if records else document.r0


def top_degree(document: TranscriptDocument) -> int:
    return max((int(r["m_hi"]) for r in document.records), default=0)


def dyadic_radii(limit: Any) -> List[Any]:
    """2, 4, 8, … up to limit, thinned out to at most 32 radii."""
    top = max(1, int(to_rational(limit)).bit_length() - 1)
    stride = max(1, math.ceil(top / MAX_DEFAULT_RADII))
    return [to_rational(1 << e) for e in range(1, top + 1, stride)]


def single_variable(document: TranscriptDocument, params: Dict[str, str]) -> DensePoly:
    if document.n != 1:
        raise ValueError("This analysis needs a one-variable transcript")
    component = param_int(params, "component", 1)
    if not 1 <= component <= document.m:
        raise ValueError(f"component must lie in [1, {document.m}]")
    f = document.partial_sums()[component - 1]
    if f.is_zero:
        raise ValueError(f"Component {component} of the truncation is identically zero")
    return f


class QuadratureAnalyzer(TranscriptAnalyzer):
    """Analyses that integrate over spheres share the node count."""

    def __init__(self, nodes: int = 256):
        self.nodes = nodes
        self.logger = get_logger(__name__)

    def quadrature(self, document: TranscriptDocument) -> RadialQuadrature:
        return RadialQuadrature(self.nodes, document.n)


class CharacteristicAnalyzer(QuadratureAnalyzer):
    name = "characteristic"

    def analyze(self, document: TranscriptDocument, params: Dict[str, str]) -> Table:
        radii = param_radii(params, dyadic_radii(final_radius(document)))
        quad = self.quadrature(document)
        partials = document.partial_sums()
        envelope, depth = document.envelope, top_degree(document)
        table = Table(self.name, ["r", "T", "tol", "log_envelope"])
        for r in radii:
            value, tol = cartan_T(partials, r, quad)
            table.rows.append(
                {
                    "r": format_rational(r),
                    "T": repr(value),
                    "tol": repr(tol),
                    "log_envelope": repr(log_rational(envelope.evaluate(r, depth))),
                }
            )
        return table


class ZerosAnalyzer(TranscriptAnalyzer):
    name = "zeros"

    def analyze(self, document: TranscriptDocument, params: Dict[str, str]) -> Table:
        f = single_variable(document, params)
        radius = param_rational(params, "radius", final_radius(document))
        inner = param_rational(params, "inner", None)
        tol = param_float(params, "tol", 1e-6)
        region = Annulus(inner, radius) if inner is not None else Disc(radius)
        zero_set = count_zeros(f, region, tol=tol)
        table = Table(self.name, ["region", "count", "re", "im", "size", "multiplicity"])
        table.rows.append({"region": region.label, "count": zero_set.count})
        for box in zero_set.boxes:
            table.rows.append({"region": region.label, **box.to_row()})
        return table


class CoversAnalyzer(TranscriptAnalyzer):
    name = "covers"

    def analyze(self, document: TranscriptDocument, params: Dict[str, str]) -> Table:
        f = single_variable(document, params)
        kmax = param_int(params, "kmax", 4)
        report = direction_covers(
            zeros_by_annulus(f, kmax, param_float(params, "tol", 1e-6)),
            kmax,
            alpha=param_float(params, "alpha", 0.5),
            delta=param_float(params, "delta", 1.0),
            ceiling=param_int(params, "ceiling", 10),
        )
        table = Table(
            self.name, ["k", "count", "bound", "excess", "intervals", "term", "partial_sum", "tail_sum", "constant"]
        )
        for row in report.to_rows():
            table.rows.append({**row, "constant": report.constant})
        return table


class WitnessAnalyzer(TranscriptAnalyzer):
    name = "witness"

    def analyze(self, document: TranscriptDocument, params: Dict[str, str]) -> Table:
        transcript = transcript_from_document(document)
        direction: Optional[int] = None if document.is_cantor else param_int(params, "direction", 1)
        result = witness(
            transcript,
            param_int(params, "target", 1),
            direction,
            param_rational(params, "epsilon", None),
        )
        row = result.to_dict()
        return Table(self.name, list(row), [row])


class GrowthAnalyzer(TranscriptAnalyzer):
    name = "growth"

    def analyze(self, document: TranscriptDocument, params: Dict[str, str]) -> Table:
        radii = param_radii(params, [to_rational(r) for r in (1, 10, 100, 1000)])
        rows = growth_audit(transcript_from_document(document), radii)
        table = Table(self.name, ["r", "coefficient_sum", "envelope_sum", "phi_lower", "ok"])
        for row in rows:
            table.rows.append(
                {
                    "r": format_rational(row["r"]),
                    "coefficient_sum": format_rational(row["coefficient_sum"]),
                    "envelope_sum": format_rational(row["envelope_sum"]),
                    "phi_lower": format_rational(row["phi_lower"]) if row["phi_lower"] is not None else "",
                    "ok": row["ok"],
                }
            )
        return table


class TorusAnalyzer(QuadratureAnalyzer):
    name = "torus"

    def analyze(self, document: TranscriptDocument, params: Dict[str, str]) -> Table:
        radii = param_radii(params, [to_rational(r) for r in (2, 4, 8)])
        quad = self.quadrature(document)
        partials = document.partial_sums()
        table = Table(self.name, ["r", "T", "tol", "radial", "area", "difference"])
        for r in radii:
            value, tol = torus_T(partials, r, quad)
            radial = torus_T_radial(partials, r, quad)
            area = torus_T_area(partials, r, quad)
            table.rows.append(
                {
                    "r": format_rational(r),
                    "T": repr(value),
                    "tol": repr(tol),
                    "radial": repr(radial),
                    "area": repr(area),
                    "difference": repr(max(abs(value - radial), abs(value - area))),
                }
            )
        return table


class ProjectiveAnalyzer(QuadratureAnalyzer):
    name = "projective"

    def analyze(self, document: TranscriptDocument, params: Dict[str, str]) -> Table:
        radii = param_radii(params, [to_rational(r) for r in (2, 4, 8)])
        k = param_int(params, "shell", 5)
        rho = param_rational(params, "rho", to_rational(1))
        shifted, certificate = avoidance_shift(document.partial_sums(), k, rho)
        quad = self.quadrature(document)
        psi = SlowPsi()
        table = Table(self.name, ["r", "T", "tol", "psi_log_r", "shell_bound", "sphere_lower", "boxes"])
        for r in radii:
            value, tol = projective_T(shifted, r, quad)
            table.rows.append(
                {
                    "r": format_rational(r),
                    "T": repr(value),
                    "tol": repr(tol),
                    "psi_log_r": repr(psi(r) * log_rational(r)),
                    "shell_bound": format_rational(certificate.shell_bound),
                    "sphere_lower": format_rational(certificate.sphere_lower),
                    "boxes": certificate.boxes,
                }
            )
        return table


class GapAnalyzer(QuadratureAnalyzer):
    name = "gap"

    def analyze(self, document: TranscriptDocument, params: Dict[str, str]) -> Table:
        f = single_variable(document, params)
        radii = param_radii(params, [to_rational(r) for r in (2, 4, 8)])
        quad = self.quadrature(document)
        tol = param_float(params, "tol", 1e-6)
        table = Table(self.name, ["r", "gap"])
        for r in radii:
            table.rows.append({"r": format_rational(r), "gap": repr(nevanlinna_gap(f, r, quad, tol))})
        gaps = [float(row["gap"]) for row in table.rows]
        if gaps:
            self.logger.info(f"Nevanlinna gap constant C = {max(0.0, -min(gaps)):.6g}")
        return table


ANALYZERS: Dict[str, Type[TranscriptAnalyzer]] = {
    cls.name: cls
    for cls in (
        CharacteristicAnalyzer,
        ZerosAnalyzer,
        CoversAnalyzer,
        WitnessAnalyzer,
        GrowthAnalyzer,
        TorusAnalyzer,
        ProjectiveAnalyzer,
        GapAnalyzer,
    )
}


def get_analyzer(name: str, nodes: int = 256) -> TranscriptAnalyzer:
    """
    Instantiate an analysis by name.

    Raises:
        ValueError: If the name is unknown
    """
    if name not in ANALYZERS:
        raise ValueError(f"Unknown analysis '{name}' (choose from {', '.join(sorted(ANALYZERS))})")
    cls = ANALYZERS[name]
    return cls(nodes) if issubclass(cls, QuadratureAnalyzer) else cls()


def run_analysis(name: str, document: TranscriptDocument, params: Dict[str, str], nodes: int = 256) -> Table:
    return get_analyzer(name, nodes).analyze(document, params)
